#include <stdio.h>
#include <string.h>
#include "mmdc.h"

int main(void) {
    const char *text = "mmdc 1\n2 1\n2\n3\n1 1\n1 1\n1\n2\n";
    MmdcInstance *inst = NULL;
    MmdcSolution *sol = NULL;
    char *out = NULL;

    if (mmdc_instance_parse(text, &inst) != MMDC_STATUS_OK) return 10;
    if (mmdc_solve(inst, &sol) != MMDC_STATUS_OK) return 11;
    if (mmdc_solution_cost(sol) != 5) return 12;
    if (mmdc_solution_pair_count(sol) != 2) return 13;
    if (mmdc_solution_write(sol, &out) != MMDC_STATUS_OK) return 14;
    fputs(out, stdout);
    mmdc_string_free(out);
    mmdc_solution_free(sol);

    if (mmdc_instance_parse("mmdc 1\n", &inst) != MMDC_STATUS_INVALID_INPUT) return 15;
    if (mmdc_last_error_message() == NULL) return 16;
    mmdc_instance_free(inst);
    return 0;
}
