/* Links against the static library through the generated header and
 * exercises one call from each family. Driven by c_smoke.rs. */
#include <stdio.h>
#include <string.h>

#include "qdfrac.h"

int main(void) {
    char buf[256];

    if (qdfrac_cf_coeffs(3, buf, sizeof buf) != QDFRAC_STATUS_OK) return 1;
    if (strcmp(buf, "1 1 1 2 2 3 3") != 0) return 2;

    if (qdfrac_e1(QDFRAC_E1_CF, "1", 128, buf, sizeof buf) != QDFRAC_STATUS_OK) return 3;
    if (strncmp(buf, "2.19383934395520273", 19) != 0) return 4;

    if (qdfrac_identities(3) != QDFRAC_STATUS_OK) return 5;

    QdfracCurve *curve = NULL;
    if (qdfrac_curve_load(CURVE_FILE, &curve) != QDFRAC_STATUS_OK) return 6;
    int64_t a2 = 0;
    if (qdfrac_curve_ap(curve, 2, &a2) != QDFRAC_STATUS_OK || a2 != -2) return 7;
    qdfrac_curve_free(curve);

    printf("c-abi ok: version %s\n", qdfrac_version());
    return 0;
}
