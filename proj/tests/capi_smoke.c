/* Plain C consumer of the public header. */
#include <math.h>
#include <stdio.h>

#include "dsmzi/dsmzi.h"

int main(void) {
  dsmzi_config cfg = {1.0, 0.5, 0.5, 1.5707963267948966, 1.0};
  dsmzi_report rep;
  if (dsmzi_report_compute(&cfg, &rep) != DSMZI_OK) {
    fprintf(stderr, "report failed: %s\n", dsmzi_last_error());
    return 1;
  }
  if (fabs(rep.delta_phi_detection - 0.825424623105555) > 1e-12) {
    fprintf(stderr, "unexpected dphi %.15g\n", rep.delta_phi_detection);
    return 1;
  }
  cfg.eta = 0.0;
  if (dsmzi_report_compute(&cfg, &rep) != DSMZI_ERR_INVALID_PARAMETER) return 1;

  dsmzi_table* t = NULL;
  dsmzi_sweep_spec spec = {DSMZI_VAR_R, 0.0, 1.0, 3, {3.0, 0, 0, 1.0, 1.0}, 1, 0, 1, 1};
  if (dsmzi_table_sweep(&spec, &t) != DSMZI_OK || dsmzi_table_rows(t) != 3) return 1;
  dsmzi_table_free(t);
  printf("dsmzi %s ok\n", dsmzi_version());
  return 0;
}
