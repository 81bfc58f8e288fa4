#include <stdio.h>
#include <string.h>
#include "brieskorn.h"

static int check(int ok, const char *what) {
    if (!ok) fprintf(stderr, "failed: %s (%s)\n", what, bk_last_error());
    return ok ? 0 : 1;
}

int main(void) {
    int bad = 0;
    BkPoly *f = NULL, *g = NULL, *h = NULL;
    bad += check(bk_poly_parse("x1^2+x2^4+x3^4", &f) == BK_STATUS_OK, "parse f");
    bad += check(bk_poly_parse("-x1^2-x2^4-x3^4", &g) == BK_STATUS_OK, "parse g");
    bad += check(bk_poly_parse("x1^2 + x1^3", &h) == BK_STATUS_PARSE, "repeated variable");

    int eq = -1;
    bad += check(bk_classify(f, g, &eq) == BK_STATUS_OK && eq == 0, "classify");

    char *beta = NULL;
    int64_t chi = 0;
    bad += check(bk_fiber(f, 1, &beta, &chi) == BK_STATUS_OK, "fiber");
    bad += check(beta && strcmp(beta, "u^2 + 1") == 0 && chi == 2, "sphere");
    bk_string_free(beta);

    char *json = NULL;
    bad += check(bk_recover_json(f, 0, &json) == BK_STATUS_OK, "recover");
    bad += check(json && strstr(json, "\"sigma_plus\":2") != NULL, "recovered counts");
    bk_string_free(json);

    bad += check(bk_classify(NULL, g, &eq) == BK_STATUS_NULL_POINTER, "null handle");
    bk_poly_free(f);
    bk_poly_free(g);
    if (!bad) printf("ok\n");
    return bad;
}
