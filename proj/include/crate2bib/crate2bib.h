#ifndef CRATE2BIB_H
#define CRATE2BIB_H

/*
 * crate2bib C API.
 *
 * Turns a package published on a crates.io-style registry into BibTeX
 * candidates: one entry from registry metadata, plus entries derived from a
 * CITATION.cff file in the package repository when one is found.
 *
 * All strings are UTF-8 and NUL-terminated. Strings returned by accessor
 * functions are owned by the handle they were obtained from and stay valid
 * until that handle is freed. Handles may be used from several threads; a
 * client serializes request starts through its rate-limit gate.
 *
 * Failing calls return a status other than C2B_OK and record a message
 * retrievable with c2b_last_error_message() on the calling thread.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CRATE2BIB_BUILDING)
#    define C2B_API __declspec(dllexport)
#  else
#    define C2B_API __declspec(dllimport)
#  endif
#else
#  define C2B_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum c2b_status {
    C2B_OK = 0,
    C2B_ERR_INVALID_ARGUMENT = 1, /* bad package name, version request, config */
    C2B_ERR_NOT_FOUND = 2,        /* registry has no such package */
    C2B_ERR_NO_MATCH = 3,         /* no version satisfies the request */
    C2B_ERR_ALL_YANKED = 4,       /* every matching version is yanked */
    C2B_ERR_RATE_LIMITED = 5,     /* registry answered 429 */
    C2B_ERR_NETWORK = 6,          /* transport failure or unexpected status */
    C2B_ERR_OFFLINE_MISS = 7,     /* offline and nothing usable in the cache */
    C2B_ERR_MALFORMED = 8,        /* registry response could not be read */
    C2B_ERR_IO = 9,               /* cache directory problems */
    C2B_ERR_INTERNAL = 10
} c2b_status;

typedef enum c2b_origin_kind {
    C2B_ORIGIN_REGISTRY = 0,
    C2B_ORIGIN_CFF = 1,
    C2B_ORIGIN_CFF_PREFERRED = 2
} c2b_origin_kind;

/* Fill with c2b_config_init() before changing fields. NULL string fields
 * select the default. */
typedef struct c2b_config {
    const char* base_url;        /* default "https://crates.io" */
    const char* user_agent;      /* default "crate2bib-cli (contact: <none>)" */
    int64_t min_request_interval_ms; /* default 1000 */
    int64_t timeout_ms;          /* default 10000 */
    const char* cache_dir;       /* default: $CRATE2BIB_CACHE_DIR, then platform cache home */
    int64_t ttl_seconds;         /* default 86400 */
    int offline;                 /* nonzero: never touch the network */
    const char* github_raw_base; /* default "https://raw.githubusercontent.com" */
    const char* codeberg_base;   /* default "https://codeberg.org" */
} c2b_config;

typedef struct c2b_client c2b_client;
typedef struct c2b_result c2b_result;

C2B_API void c2b_config_init(c2b_config* config);

C2B_API c2b_status c2b_client_new(const c2b_config* config, c2b_client** out);
C2B_API void c2b_client_free(c2b_client* client);

/* Runs the whole pipeline. `version` may be NULL or "latest"; `branch`
 * (may be NULL) is probed before main and master. */
C2B_API c2b_status c2b_gather(c2b_client* client, const char* package, const char* version, int probe_cff,
                              const char* branch, c2b_result** out);

C2B_API size_t c2b_result_count(const c2b_result* result);
/* Serialized BibTeX of candidate i, exactly as the CLI prints it. */
C2B_API const char* c2b_result_bibtex(const c2b_result* result, size_t index);
C2B_API c2b_origin_kind c2b_result_origin_kind(const c2b_result* result, size_t index);
/* "registry", "cff" or "cff-preferred" */
C2B_API const char* c2b_result_origin_name(const c2b_result* result, size_t index);
C2B_API const char* c2b_result_origin_url(const c2b_result* result, size_t index);
C2B_API size_t c2b_result_warning_count(const c2b_result* result, size_t index);
C2B_API const char* c2b_result_warning(const c2b_result* result, size_t index, size_t warning);
/* All candidates with their `% origin:` comment lines, blank-line separated. */
C2B_API const char* c2b_result_render(const c2b_result* result);
C2B_API void c2b_result_free(c2b_result* result);

C2B_API const char* c2b_last_error_message(void);
C2B_API const char* c2b_status_name(c2b_status status);

#ifdef __cplusplus
}
#endif

#endif /* CRATE2BIB_H */
