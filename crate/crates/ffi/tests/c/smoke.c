#include <stdio.h>
#include <string.h>
#include "cubicomp.h"

#define CHECK(expr)                                                        \
  do {                                                                     \
    if (!(expr)) {                                                         \
      const char *e = cubic_last_error();                                  \
      fprintf(stderr, "check failed: %s (%s)\n", #expr, e ? e : "-");      \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  CubicDisc *disc = NULL;
  CubicFormHandle *f1 = NULL, *f2 = NULL, *p = NULL, *reference = NULL;
  CubicComposition *comp = NULL;
  char *s = NULL;
  bool ok = false, found = false;
  int64_t w[4];

  CHECK(cubic_disc_new("-31", &disc) == CUBIC_STATUS_OK);
  CHECK(cubic_form_parse("-1,-1,1,4", &f1) == CUBIC_STATUS_OK);
  CHECK(cubic_form_from_i64(1, -2, 0, 1, &f2) == CUBIC_STATUS_OK);

  CHECK(cubic_form_discriminant(f1, &s) == CUBIC_STATUS_OK);
  CHECK(strcmp(s, "-31") == 0);
  cubic_string_free(s);

  CHECK(cubic_form_covariant(f1, &s) == CUBIC_STATUS_OK);
  CHECK(strcmp(s, "-1/2,7/2,13/2,1") == 0);
  cubic_string_free(s);

  CHECK(cubic_compose(disc, f1, f2, &comp) == CUBIC_STATUS_OK);
  CHECK(cubic_composition_form(comp, &p) == CUBIC_STATUS_OK);
  CHECK(cubic_form_from_i64(7, 1, -1, 0, &reference) == CUBIC_STATUS_OK);
  CHECK(cubic_equivalent(p, reference, 0, &found, w) == CUBIC_STATUS_OK);
  CHECK(found);

  int64_t m[4] = {1, 0, 1, -1}, n[4] = {0, 2, 4, 1};
  CHECK(cubic_verify(f1, f2, reference, m, n, &ok) == CUBIC_STATUS_OK);
  CHECK(ok);

  CubicDisc *bad = NULL;
  CHECK(cubic_disc_new("9", &bad) == CUBIC_STATUS_INVALID_DISCRIMINANT);
  CHECK(cubic_last_error() != NULL);

  printf("c smoke ok\n");
  cubic_composition_free(comp);
  cubic_form_free(f1);
  cubic_form_free(f2);
  cubic_form_free(p);
  cubic_form_free(reference);
  cubic_disc_free(disc);
  return 0;
}
