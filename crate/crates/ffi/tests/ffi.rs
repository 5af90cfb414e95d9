use std::ffi::{CStr, CString};
use std::ptr;

use mmdc_ffi::*;

fn last_error() -> String {
    let p = mmdc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn parse(text: &str) -> (MmdcStatus, *mut MmdcInstance) {
    let c = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    let status = unsafe { mmdc_instance_parse(c.as_ptr(), &mut inst) };
    (status, inst)
}

#[test]
fn arrays_solve_and_read_back() {
    let weights = [3u64, 1, 4, 1, 5, 9];
    let (da, ca) = ([1u32, 1], [2u32, 2]);
    let (db, cb) = ([1u32, 1, 1], [1u32, 1, 2]);
    let mut inst = ptr::null_mut();
    let status = unsafe {
        mmdc_instance_new(
            2,
            3,
            weights.as_ptr(),
            da.as_ptr(),
            ca.as_ptr(),
            db.as_ptr(),
            cb.as_ptr(),
            &mut inst,
        )
    };
    assert_eq!(status, MmdcStatus::Ok);
    assert_eq!(unsafe { mmdc_instance_validate(inst) }, MmdcStatus::Ok);

    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { mmdc_solve(inst, &mut sol) }, MmdcStatus::Ok);
    let n = unsafe { mmdc_solution_pair_count(sol) };
    let mut cost = 0u64;
    let mut size = 0u32;
    for k in 0..n {
        let (mut i, mut j, mut m) = (0usize, 0usize, 0u32);
        assert_eq!(
            unsafe { mmdc_solution_pair(sol, k, &mut i, &mut j, &mut m) },
            MmdcStatus::Ok
        );
        cost += weights[i * 3 + j] * u64::from(m);
        size += m;
    }
    assert_eq!(cost, unsafe { mmdc_solution_cost(sol) });
    assert_eq!(size, 4);

    let (mut i, mut j, mut m) = (0usize, 0usize, 0u32);
    assert_eq!(
        unsafe { mmdc_solution_pair(sol, n, &mut i, &mut j, &mut m) },
        MmdcStatus::OutOfRange
    );
    assert!(last_error().contains("pair"));

    let mut text = ptr::null_mut();
    assert_eq!(
        unsafe { mmdc_solution_write(sol, &mut text) },
        MmdcStatus::Ok
    );
    let rendered = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    assert!(
        rendered.starts_with(&format!("cost {cost}\n")),
        "{rendered}"
    );
    unsafe {
        mmdc_string_free(text);
        mmdc_solution_free(sol);
        mmdc_instance_free(inst);
    }
}

#[test]
fn parsed_instance_matches_cli_example() {
    let (status, inst) = parse("mmdc 1\n2 1\n2\n3\n1 1\n1 1\n1\n2\n");
    assert_eq!(status, MmdcStatus::Ok);
    let mut sol = ptr::null_mut();
    assert_eq!(unsafe { mmdc_solve(inst, &mut sol) }, MmdcStatus::Ok);
    assert_eq!(unsafe { mmdc_solution_cost(sol) }, 5);
    assert!(mmdc_last_error_message().is_null());
    unsafe {
        mmdc_solution_free(sol);
        mmdc_instance_free(inst);
    }
}

#[test]
fn parse_errors_report_position() {
    let (status, inst) = parse("mmdc 1\n2 x\n");
    assert_eq!(status, MmdcStatus::InvalidInput);
    assert!(inst.is_null());
    assert!(last_error().contains("line 2"), "{}", last_error());
}

#[test]
fn rejected_and_infeasible_are_distinct() {
    let (_, rejected) = parse("mmdc 1\n1 1\n4\n3\n3\n3\n3\n");
    assert_eq!(
        unsafe { mmdc_instance_validate(rejected) },
        MmdcStatus::Rejected
    );
    let mut sol = ptr::null_mut();
    assert_eq!(
        unsafe { mmdc_solve(rejected, &mut sol) },
        MmdcStatus::Rejected
    );
    assert!(sol.is_null());

    let (_, stalls) = parse("mmdc 1\n2 1\n3\n4\n2 1\n2 1\n3\n3\n");
    assert_eq!(unsafe { mmdc_instance_validate(stalls) }, MmdcStatus::Ok);
    assert_eq!(
        unsafe { mmdc_solve(stalls, &mut sol) },
        MmdcStatus::Infeasible
    );
    assert!(last_error().contains("Hall violator"));
    unsafe {
        mmdc_instance_free(rejected);
        mmdc_instance_free(stalls);
    }
}

#[test]
fn null_and_shape_errors() {
    let mut inst = ptr::null_mut();
    let ones = [1u32; 2];
    let status = unsafe {
        mmdc_instance_new(
            2,
            2,
            ptr::null(),
            ones.as_ptr(),
            ones.as_ptr(),
            ones.as_ptr(),
            ones.as_ptr(),
            &mut inst,
        )
    };
    assert_eq!(status, MmdcStatus::NullArgument);
    assert_eq!(
        unsafe { mmdc_solve(ptr::null(), &mut ptr::null_mut()) },
        MmdcStatus::NullArgument
    );
    assert_eq!(
        unsafe { mmdc_instance_parse(ptr::null(), &mut inst) },
        MmdcStatus::NullArgument
    );
    assert_eq!(unsafe { mmdc_solution_cost(ptr::null()) }, 0);
    assert_eq!(unsafe { mmdc_solution_pair_count(ptr::null()) }, 0);

    let huge = [1u64 << 41; 4];
    let status = unsafe {
        mmdc_instance_new(
            2,
            2,
            huge.as_ptr(),
            ones.as_ptr(),
            ones.as_ptr(),
            ones.as_ptr(),
            ones.as_ptr(),
            &mut inst,
        )
    };
    assert_eq!(status, MmdcStatus::InvalidInput);

    // Demand above capacity is a validation failure, not a construction one.
    let demand_over_cap = [2u32, 1];
    let w = [1u64; 4];
    let status = unsafe {
        mmdc_instance_new(
            2,
            2,
            w.as_ptr(),
            demand_over_cap.as_ptr(),
            ones.as_ptr(),
            ones.as_ptr(),
            ones.as_ptr(),
            &mut inst,
        )
    };
    assert_eq!(status, MmdcStatus::Ok);
    assert_eq!(
        unsafe { mmdc_instance_validate(inst) },
        MmdcStatus::Rejected
    );
    assert!(last_error().contains("α_i ≤ α′_i"), "{}", last_error());
    unsafe { mmdc_instance_free(inst) };
    unsafe {
        mmdc_instance_free(ptr::null_mut());
        mmdc_solution_free(ptr::null_mut());
        mmdc_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/mmdc.h")).unwrap();
    for name in [
        "mmdc_instance_new",
        "mmdc_instance_parse",
        "mmdc_instance_validate",
        "mmdc_instance_free",
        "mmdc_solve",
        "mmdc_solution_cost",
        "mmdc_solution_pair_count",
        "mmdc_solution_pair",
        "mmdc_solution_write",
        "mmdc_solution_free",
        "mmdc_string_free",
        "mmdc_last_error_message",
        "typedef struct MmdcInstance MmdcInstance;",
        "MMDC_STATUS_INFEASIBLE = 4",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_against_cdylib() {
    use std::path::PathBuf;
    use std::process::Command;

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let libdir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = libdir.join(format!(
        "{}mmdc_ffi{}",
        std::env::consts::DLL_PREFIX,
        std::env::consts::DLL_SUFFIX
    ));
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or {} missing", lib.display());
        return;
    }
    let exe = std::env::temp_dir().join(format!("mmdc-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&libdir)
        .arg("-lmmdc_ffi")
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe)
        .env("LD_LIBRARY_PATH", &libdir)
        .output()
        .unwrap();
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("cost 5\n"));
    let _ = std::fs::remove_file(exe);
}
