#include <stdio.h>
#include <string.h>

#include "xrs.h"

#define CHECK(expr)                                                        \
    do {                                                                   \
        XrsStatus s_ = (expr);                                             \
        if (s_ != XRS_STATUS_OK) {                                         \
            fprintf(stderr, "%s: %s\n", #expr, xrs_status_message(s_));    \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    XrsPublicKey *pk = NULL;
    XrsPrivateKey *sk = NULL;
    CHECK(xrs_keygen_preset("toy", 5, &pk, &sk));

    const uint8_t msg[1] = {0x7f};
    size_t len = 0;
    if (xrs_encrypt(pk, msg, 1, NULL, 0, &len) != XRS_STATUS_BUFFER_TOO_SMALL) {
        return 2;
    }
    char ct[4096];
    CHECK(xrs_encrypt(pk, msg, 1, ct, sizeof ct, &len));

    uint8_t out[16];
    CHECK(xrs_decrypt(sk, ct, out, sizeof out, &len));
    if (len != 1 || out[0] != 0x7f) {
        return 3;
    }
    printf("bits=%llu ok\n", (unsigned long long)xrs_public_key_bits(pk));
    xrs_public_key_free(pk);
    xrs_private_key_free(sk);
    return 0;
}
