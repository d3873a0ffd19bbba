// steadyfock.h - C interface to the engineered-reservoir simulation library.
//
// All entry points are exported with C linkage so the shared library can be
// loaded from any FFI. Scenarios are built from JSON text or a preset name,
// optionally adjusted, then run; results come back as JSON strings owned by
// the scenario handle. Every call returns a status code mirroring the CLI
// exit codes; sfk_last_error() describes the most recent failure on the
// calling thread.

#ifndef STEADYFOCK_H
#define STEADYFOCK_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sfk_status {
    SFK_OK = 0,
    SFK_ERR_CONFIG = 2,      /* bad configuration, schema, or argument */
    SFK_ERR_SOLVER = 3,      /* numerical failure or I/O error */
    SFK_ERR_TRUNCATION = 4,  /* corner population above the tail rule */
    SFK_ERR_INTERNAL = 5     /* should not happen; see sfk_last_error */
} sfk_status;

typedef struct sfk_scenario sfk_scenario;

/* Build a scenario from a JSON config document. On success *out owns the
   handle; free it with sfk_scenario_free. */
sfk_status sfk_scenario_from_json(const char* json_text, sfk_scenario** out);

/* Build a scenario running the named figure preset (fig2 .. fig7). */
sfk_status sfk_scenario_from_preset(const char* name, sfk_scenario** out);

/* Adjustments applied before running. */
sfk_status sfk_scenario_set_nmax(sfk_scenario* s, int n_max);
sfk_status sfk_scenario_set_seed(sfk_scenario* s, uint64_t seed);
sfk_status sfk_scenario_allow_tail(sfk_scenario* s, int allow);

/* Run the scenario, writing its artifact files under out_dir. Passing NULL
   or "" falls back to the config's own "out" entry, then to ".". */
sfk_status sfk_scenario_run(sfk_scenario* s, const char* out_dir);

/* JSON views owned by the handle; valid until the next call on the same
   handle or sfk_scenario_free. Report/manifest are NULL before a run. */
const char* sfk_scenario_report_json(const sfk_scenario* s);
const char* sfk_scenario_manifest_json(const sfk_scenario* s);
const char* sfk_scenario_config_json(const sfk_scenario* s);

void sfk_scenario_free(sfk_scenario* s);

/* Description of the most recent failure on this thread ("" if none). */
const char* sfk_last_error(void);

/* JSON array of available preset names. */
const char* sfk_presets_json(void);

const char* sfk_version(void);

#ifdef __cplusplus
}
#endif

#endif /* STEADYFOCK_H */
