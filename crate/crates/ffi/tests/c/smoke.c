#include <math.h>
#include <stdio.h>

#include "zetacorr.h"

int main(void) {
    ZpcZeroSet *zs = NULL;
    if (zpc_zeros_compute(100.0, 1e-10, &zs) != ZPC_STATUS_OK) {
        fprintf(stderr, "compute: %s\n", zpc_last_error_message());
        return 1;
    }
    if (zpc_zeros_len(zs) != 29) {
        return 2;
    }
    double g = 0.0;
    zpc_zeros_get(zs, 0, &g);
    if (fabs(g - 14.134725141734693) > 1e-9) {
        return 3;
    }
    double f = 0.0;
    if (zpc_f_direct(zs, 1.0, 100.0, 1.0, &f, NULL) != ZPC_STATUS_OK || f < 29.0) {
        return 4;
    }
    if (zpc_truncated_psi(zs, 100.0, 90.0, &f) != ZPC_STATUS_INTEGER_ARGUMENT) {
        return 5;
    }
    zpc_zeros_free(zs);
    printf("ok %s\n", zpc_version());
    return 0;
}
