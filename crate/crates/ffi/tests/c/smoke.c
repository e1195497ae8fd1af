#include <stdio.h>
#include <string.h>
#include "a1deg.h"

int main(void) {
    A1degGw *cusp = NULL;
    if (a1deg_milnor("q", "x,y", "x^3 - y^2", NULL, &cusp) != A1DEG_STATUS_OK) {
        fprintf(stderr, "milnor failed: %s\n", a1deg_last_error());
        return 1;
    }
    A1degGw *h = NULL;
    a1deg_gw_parse("q", "H", &h);
    int eq = 0;
    if (a1deg_gw_eq(cusp, h, &eq) != A1DEG_STATUS_OK || !eq) {
        return 2;
    }
    char *s = a1deg_gw_to_string(cusp);
    printf("%s\n", s);
    a1deg_string_free(s);
    A1degGw *bad = NULL;
    if (a1deg_gw_parse("q", "<1> + ", &bad) != A1DEG_STATUS_INPUT_ERROR || bad != NULL) {
        return 3;
    }
    if (strlen(a1deg_last_error()) == 0) {
        return 4;
    }
    a1deg_gw_free(cusp);
    a1deg_gw_free(h);
    return 0;
}
