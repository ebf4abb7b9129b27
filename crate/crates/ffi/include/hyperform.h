#ifndef HYPERFORM_H
#define HYPERFORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum {
  HF_STATUS_OK = 0,
  HF_STATUS_NULL_ARGUMENT = 1,
  HF_STATUS_INVALID_UTF8 = 2,
  HF_STATUS_PARSE = 3,
  HF_STATUS_INVALID = 4,
  HF_STATUS_NOT_FOUND = 5,
  HF_STATUS_DOMAIN = 6,
  HF_STATUS_PANIC = 7,
} HfStatus;

/**
 * A loaded family file.
 */
typedef struct HfFamilyFile HfFamilyFile;

/**
 * A hypergraph value.
 */
typedef struct HfHypergraph HfHypergraph;

/**
 * A derived transformation.
 */
typedef struct HfTransformation HfTransformation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *hf_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is NULL or a string returned through an out-parameter of this library
 * that has not been freed.
 */
void hf_string_free(char *s);

/**
 * Parses the text form `<{a,b}; {e:{a,b}}>`.
 *
 * # Safety
 * `src` is a nul-terminated string; `out` is writable.
 */
HfStatus hf_hypergraph_parse(const char *src, HfHypergraph **out);

/**
 * Parses the JSON form `{"vertices": [...], "edges": {...}}`.
 *
 * # Safety
 * `src` is a nul-terminated string; `out` is writable.
 */
HfStatus hf_hypergraph_from_json(const char *src, HfHypergraph **out);

/**
 * # Safety
 * `h` is NULL or a live handle from this library.
 */
void hf_hypergraph_free(HfHypergraph *h);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
HfStatus hf_hypergraph_to_string(const HfHypergraph *h, char **out);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
HfStatus hf_hypergraph_to_json(const HfHypergraph *h, char **out);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
HfStatus hf_hypergraph_vertex_count(const HfHypergraph *h, uintptr_t *out);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
HfStatus hf_hypergraph_edge_count(const HfHypergraph *h, uintptr_t *out);

/**
 * # Safety
 * `h` is a live handle; `out` is writable.
 */
HfStatus hf_hypergraph_component_count(const HfHypergraph *h, uintptr_t *out);

/**
 * Whether two hypergraphs are structurally equal.
 *
 * # Safety
 * `a` and `b` are live handles; `out` is writable.
 */
HfStatus hf_hypergraph_equal(const HfHypergraph *a, const HfHypergraph *b, bool *out);

/**
 * a ⊕ b. Fails with [`HfStatus::Domain`] when they share a vertex.
 *
 * # Safety
 * `a` and `b` are live handles; `out` is writable.
 */
HfStatus hf_hypergraph_direct_sum(const HfHypergraph *a, const HfHypergraph *b, HfHypergraph **out);

/**
 * Loads a family file from its JSON text.
 *
 * # Safety
 * `src` is a nul-terminated string; `out` is writable.
 */
HfStatus hf_family_file_load(const char *src, HfFamilyFile **out);

/**
 * # Safety
 * `f` is NULL or a live handle from this library.
 */
void hf_family_file_free(HfFamilyFile *f);

/**
 * The canonical JSON form of a loaded file.
 *
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
HfStatus hf_family_file_canonical(const HfFamilyFile *f, char **out);

/**
 * Looks up a named hypergraph or summand; `null` names 𝒩.
 *
 * # Safety
 * `f` is a live handle; `name` is a nul-terminated string; `out` is writable.
 */
HfStatus hf_family_file_hypergraph(const HfFamilyFile *f, const char *name, HfHypergraph **out);

/**
 * Derives the transformation of a named spec.
 *
 * # Safety
 * `f` is a live handle; `name` is a nul-terminated string; `out` is writable.
 */
HfStatus hf_family_file_derive(const HfFamilyFile *f, const char *name, HfTransformation **out);

/**
 * # Safety
 * `t` is NULL or a live handle from this library.
 */
void hf_transformation_free(HfTransformation *t);

/**
 * π(x). Fails with [`HfStatus::Domain`] outside the family.
 *
 * # Safety
 * `t` and `x` are live handles; `out` is writable.
 */
HfStatus hf_transformation_apply(const HfTransformation *t,
                                 const HfHypergraph *x,
                                 HfHypergraph **out);

/**
 * The number of members moved by the transformation.
 *
 * # Safety
 * `t` is a live handle; `out` is writable.
 */
HfStatus hf_transformation_support_size(const HfTransformation *t, uintptr_t *out);

/**
 * The full table as a JSON array of `[input, output]` pairs.
 *
 * # Safety
 * `t` is a live handle; `out` is writable.
 */
HfStatus hf_transformation_table_json(const HfTransformation *t, char **out);

/**
 * Runs the command-line front end on `argc` arguments (without the
 * program name). Writes the exit code and both streams.
 *
 * # Safety
 * `argv` points to `argc` nul-terminated strings; the out-parameters are
 * writable.
 */
HfStatus hf_cli_run(uintptr_t argc,
                    const char *const *argv,
                    int32_t *exit_code,
                    char **stdout,
                    char **stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERFORM_H */
