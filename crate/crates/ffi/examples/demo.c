#include <stdio.h>
#include <assert.h>
#include "starlike.h"

int main(void) {
    SlSeries *series = NULL;
    assert(sl_series_new(SL_COEFF_EPS, 6, &series) == SL_STATUS_OK);
    char *s = NULL;
    assert(sl_series_coeff(series, 6, &s) == SL_STATUS_OK);
    printf("eps_6 = %s\n", s);
    sl_string_free(s);
    sl_series_free(series);

    assert(sl_rayleigh_sum(2, "1", &s) == SL_STATUS_OK);
    printf("sigma_2(1) = %s\n", s);
    sl_string_free(s);

    assert(sl_radius_asymptotic(SL_RADIUS_PHI, "10", 6, 128, &s) == SL_STATUS_OK);
    printf("radius(phi, 10, order 6) = %s\n", s);
    sl_string_free(s);

    assert(sl_rayleigh_sum(1, "-1", &s) == SL_STATUS_DOMAIN);
    printf("pole rejected, version %s\n", sl_version());
    return 0;
}
