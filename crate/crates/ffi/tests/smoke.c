#include <stdio.h>
#include <string.h>
#include "arccover.h"

int main(void) {
  ArcGraph *g = NULL;
  if (arc_graph_from_family("platonic:cube", &g) != ARC_STATUS_OK) return 10;
  ArcMipResult r;
  if (arc_mip_solve(g, 0, 0.0, &r) != ARC_STATUS_OK) return 11;
  if (r.seg_lower != 7 || r.variables != 48 || !r.optimal) return 12;
  arc_graph_free(g);

  ArcDrawing *d = NULL;
  if (arc_drawing_build("ico7", NULL, 0, &d) != ARC_STATUS_OK) return 13;
  ArcVerifySummary s;
  if (arc_drawing_verify(d, 1e-9, &s) != ARC_STATUS_OK) return 14;
  if (!s.valid || s.circles != 7) return 15;
  arc_drawing_free(d);

  if (arc_graph_from_family("nonsense:3", &g) != ARC_STATUS_INVALID_INPUT) return 16;
  if (arc_last_error() == NULL) return 17;
  printf("ok\n");
  return 0;
}
