/* The public header must be usable from C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sync_census/sync_census.h"

int main(void) {
  sc_digraph* g = NULL;
  sc_census* c = NULL;
  char* ratio = NULL;
  int ok;
  if (sc_digraph_construct("g30", 0, 0, 0, &g) != SC_OK) return 1;
  if (sc_census_run(g, NULL, &c) != SC_OK) return 1;
  if (sc_census_get(c, SC_FIELD_RATIO, &ratio) != SC_OK) return 1;
  ok = strcmp(ratio, "15/32") == 0;
  printf("g30 ratio %s\n", ratio);
  sc_string_free(ratio);
  sc_census_free(c);
  sc_digraph_free(g);
  return ok ? 0 : 1;
}
