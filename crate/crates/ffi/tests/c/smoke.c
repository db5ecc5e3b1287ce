#include <stdio.h>
#include <string.h>

#include "dimalg.h"

static int fails = 0;

static void expect(int ok, const char *what) {
    if (!ok) {
        fprintf(stderr, "FAIL: %s\n", what);
        fails++;
    }
}

int main(void) {
    DimalgRegistry *r = dimalg_registry_si();
    DimalgQuantity *flow = NULL, *t = NULL, *secs = NULL;
    char *text = NULL;

    expect(dimalg_eval(r, "2.2 L/min + 2.1 L/min", &flow) == DIMALG_STATUS_OK, "eval flow");
    expect(dimalg_quantity_format(r, flow, 4, &text) == DIMALG_STATUS_OK, "format flow");
    expect(strcmp(text, "4.300 L/min") == 0, "flow text");
    dimalg_string_free(text);

    expect(dimalg_eval(r, "300 cm^3 / (2.2 L/min + 2.1 L/min)", &t) == DIMALG_STATUS_OK, "eval time");
    expect(dimalg_convert(r, t, "s", &secs) == DIMALG_STATUS_OK, "convert");
    expect(dimalg_quantity_format(r, secs, 0, &text) == DIMALG_STATUS_OK, "format exact");
    expect(strcmp(text, "(180/43) s") == 0, "exact text");
    dimalg_string_free(text);

    DimalgQuantity *bad = NULL;
    expect(dimalg_eval(r, "2 m + 3 s", &bad) == DIMALG_STATUS_DIMENSION_MISMATCH, "mismatch status");
    expect(bad == NULL, "no handle on failure");
    expect(strstr(dimalg_last_error(), "length vs time") != NULL, "mismatch message");

    dimalg_quantity_free(flow);
    dimalg_quantity_free(t);
    dimalg_quantity_free(secs);
    dimalg_registry_free(r);
    if (fails == 0) {
        printf("ok\n");
    }
    return fails == 0 ? 0 : 1;
}
