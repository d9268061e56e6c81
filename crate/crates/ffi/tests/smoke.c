#include <math.h>
#include <stdio.h>
#include <string.h>

#include "biharm.h"

static int check(int cond, const char *what) {
    if (!cond) {
        fprintf(stderr, "failed: %s (%s)\n", what, bh_last_error());
    }
    return cond;
}

int main(void) {
    BhElement e2 = {0.0, 0.0, 1.0, 0.0};
    BhElement out;
    int ok = 1;

    ok &= check(bh_multiply(e2, e2, &out) == BH_STATUS_OK, "multiply");
    ok &= check(out.u1 == 1.0 && out.u4 == 2.0, "e2 squared");

    BhElement rho = {1.0, 0.0, 0.0, 1.0};
    ok &= check(bh_invert(rho, &out) == BH_STATUS_ZERO_DIVISOR, "rho has no inverse");
    ok &= check(strlen(bh_last_error()) > 0, "error message");

    double cos_coeffs[1] = {0.25};
    double sin_coeffs[1] = {0.0};
    BhFourier g = {0.0, cos_coeffs, sin_coeffs, 1};
    BhElasticSolution *sol = NULL;
    ok &= check(bh_elastic_solve(&g, &g, 1.0, 1.0, 0.0, 0.0, BH_V2_FORMULA_DERIVED, &sol) == BH_STATUS_OK,
                "elastic solve");
    BhElasticPoint p;
    ok &= check(bh_elastic_point(sol, 0.5, 0.2, &p) == BH_STATUS_OK, "elastic point");
    ok &= check(fabs(p.tau_xy + 0.2) < 1e-12, "shear stress");
    ok &= check(bh_elastic_point(sol, 2.0, 0.0, &p) == BH_STATUS_DOMAIN, "outside the disk");
    bh_elastic_free(sol);

    if (ok) {
        printf("ok\n");
        return 0;
    }
    return 1;
}
