#ifndef EXDD_EXDD_H
#define EXDD_EXDD_H

#include <stdint.h>

#if defined(_WIN32)
#define EXDD_API __declspec(dllexport)
#else
#define EXDD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct exdd_circuit exdd_circuit;

enum exdd_status {
  EXDD_OK = 0,
  EXDD_ERR_PARSE = 1,
  EXDD_ERR_ARGUMENT = 2,
  EXDD_ERR_RANGE = 3,
  EXDD_ERR_TOO_LARGE = 4,
  EXDD_ERR_ZERO_STATE = 5,
  EXDD_ERR_INTERNAL = 6
};

EXDD_API const char* exdd_version(void);
EXDD_API const char* exdd_status_string(int status);

/* Strings returned through char** are owned by the caller. */
EXDD_API void exdd_string_free(char* s);

/* On failure *err (if non-null) receives a message. */
EXDD_API int exdd_circuit_parse(const char* qasm, exdd_circuit** out, char** err);

/* kind: "grover" | "wstate" | "random".
   params: {"n":..,"marked":"..","iterations":..,"depth":..,"seed":..,"max_t":..,"max_h":..,"clifford_only":..} */
EXDD_API int exdd_circuit_generate(const char* kind, const char* params_json, exdd_circuit** out, char** err);

EXDD_API void exdd_circuit_free(exdd_circuit* c);
EXDD_API int exdd_circuit_qubits(const exdd_circuit* c);
EXDD_API int exdd_circuit_emit(const exdd_circuit* c, char** qasm);
EXDD_API int exdd_circuit_set_name(exdd_circuit* c, const char* name);

/* options: {"backend":"evdd"|"limdd","coeffs":"exact"|"float","tolerance":..,"norm":"low"|"l2",
             "check_bounds":..,"check_coeffs":..,"keep_caches":..,"native_ccx":..,"trace":..,"seed":..}
   dot may be null. */
EXDD_API int exdd_simulate(const exdd_circuit* c, const char* options_json, char** report_json, char** dot, char** err);

EXDD_API int exdd_bounds(const exdd_circuit* c, int native_ccx, char** json, char** err);

EXDD_API int exdd_compare(const exdd_circuit* c, const char* options_json, char** json, char** err);

#ifdef __cplusplus
}
#endif

#endif
