#include <stdio.h>
#include <string.h>

#include "ksforms.h"

int main(void) {
    KsfRep *rep = NULL;
    if (ksf_rep_new(2, 1, -1, &rep) != KSF_STATUS_OK) {
        return 10;
    }
    size_t s = 0;
    ksf_rep_spinor_dim(rep, &s);
    ksf_rep_free(rep);

    char *out = NULL;
    KsfStatus st = ksf_verify("{\"n_plus\":2,\"degrees\":[0],\"suites\":[\"clifford\"]}", &out);
    if (st != KSF_STATUS_OK || strstr(out, "\"spec_version\": \"1\"") == NULL) {
        return 11;
    }
    ksf_string_free(out);

    if (ksf_explain("bogus", &out) != KSF_STATUS_USAGE || ksf_last_error() == NULL) {
        return 12;
    }
    printf("spinor_dim=%zu\n", s);
    return 0;
}
