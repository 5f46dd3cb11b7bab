#ifndef BRIDGESURF_H
#define BRIDGESURF_H

/* C interface to the bridge-surface candidate search. Every result is a
   UTF-8 JSON document owned by the caller (release with bs_string_free).
   Options are a JSON object; recognised keys: depth, flat_budget, b (integer
   or "auto"), n, interior_cap, coord_cap, threads, factor. NULL means {}. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BS_API __declspec(dllexport)
#else
#define BS_API __attribute__((visibility("default")))
#endif

typedef enum bs_status {
  BS_OK = 0,
  BS_ERR_PARSE = 1,        /* malformed triangulation or options text */
  BS_ERR_INVALID = 2,      /* input violates a structural requirement */
  BS_ERR_ARGUMENT = 3,     /* bad option value or null pointer */
  BS_ERR_PRECONDITION = 4, /* operation not applicable to this input */
  BS_ERR_INCOMPLETE = 5,   /* a truncated intermediate result was required */
  BS_ERR_INTERNAL = 6
} bs_status;

typedef struct bs_triangulation bs_triangulation;

BS_API const char* bs_version(void);

/* Message of the last failure on this thread; empty after a success. */
BS_API const char* bs_last_error(void);

BS_API bs_status bs_triangulation_parse(const char* json_text, bs_triangulation** out);
BS_API bs_status bs_triangulation_load(const char* path, bs_triangulation** out);
BS_API void bs_triangulation_free(bs_triangulation* tri);
BS_API int bs_triangulation_size(const bs_triangulation* tri);
BS_API int bs_triangulation_has_meridian(const bs_triangulation* tri);

BS_API bs_status bs_validate(const bs_triangulation* tri, char** json_out);
BS_API bs_status bs_angles(const bs_triangulation* tri, const char* options, char** json_out);
BS_API bs_status bs_meridian_bound(const bs_triangulation* tri, char** json_out);
/* tri may be NULL when b is an explicit integer. */
BS_API bs_status bs_discs(const bs_triangulation* tri, const char* options, char** json_out);
BS_API bs_status bs_match(const bs_triangulation* tri, const char* options, char** json_out);
BS_API bs_status bs_fundamental(const bs_triangulation* tri, const char* options, char** json_out);
BS_API bs_status bs_candidates(const bs_triangulation* tri, const char* options, char** json_out);
BS_API bs_status bs_pipeline(const bs_triangulation* tri, const char* options, char** json_out);

BS_API void bs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
