#include <math.h>
#include <stdio.h>
#include "bohr.h"

int main(void) {
    BohrRadius *r = NULL;
    if (bohr_radius(BOHR_FAMILY_QC_CONVEX, 1.0, 1.0, &r) != BOHR_STATUS_OK) return 1;
    double v = bohr_radius_value(r);
    bohr_radius_free(r);
    if (fabs(v - 1.0 / 3.0) > 1e-12) return 2;

    BohrSeries *k = NULL, *inv = NULL;
    if (bohr_series_catalog(BOHR_CATALOG_KOEBE_NEG, 0.0, 20, &k) != BOHR_STATUS_OK) return 3;
    if (bohr_series_revert(k, &inv) != BOHR_STATUS_OK) return 4;
    double re, im;
    bohr_series_coeff(inv, 2, &re, &im);
    bohr_series_free(k);
    bohr_series_free(inv);
    if (fabs(re - 2.0) > 1e-12) return 5;

    if (bohr_radius(BOHR_FAMILY_QC_CONVEX, 0.5, 1.0, &r) != BOHR_STATUS_DOMAIN) return 6;
    char msg[256];
    bohr_last_error_message(msg, sizeof msg);
    printf("%s\n", msg);
    return 0;
}
