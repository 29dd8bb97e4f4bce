#ifndef FAIRGATE_FAIRGATE_H
#define FAIRGATE_FAIRGATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(FAIRGATE_BUILDING_LIBRARY)
#define FG_API __attribute__((visibility("default")))
#else
#define FG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fg_status {
    FG_OK = 0,
    FG_ERR_CYCLE_DETECTED,
    FG_ERR_DUPLICATE_EDGE,
    FG_ERR_SELF_LOOP,
    FG_ERR_MALFORMED_NAME,
    FG_ERR_UNKNOWN_VARIABLE,
    FG_ERR_SYNTAX,
    FG_ERR_DUPLICATE_VARIABLE,
    FG_ERR_PROBABILITY_OUT_OF_RANGE,
    FG_ERR_RESOURCE_LIMIT,
    FG_ERR_VARIABLE_ALREADY_IN_CONTEXT,
    FG_ERR_WEAKENING_TARGET_IS_GOAL,
    FG_ERR_INADMISSIBLE_WEAKENING,
    FG_ERR_EMPTY_CONDITIONING_SET,
    FG_ERR_UNKNOWN_COLUMN,
    FG_ERR_MALFORMED_DATASET,
    FG_ERR_SUBSET_EXPLOSION,
    FG_ERR_INVALID_ARGUMENT,
    FG_ERR_INTERNAL
} fg_status;

typedef enum fg_format { FG_FORMAT_JSON = 0, FG_FORMAT_TEXT = 1 } fg_format;

typedef enum fg_mode { FG_MODE_GRAPHICAL = 0, FG_MODE_EMPIRICAL = 1, FG_MODE_BOTH = 2 } fg_mode;

typedef struct fg_graph fg_graph;
typedef struct fg_closure fg_closure;
typedef struct fg_judgment fg_judgment;
typedef struct fg_context fg_context;
typedef struct fg_dataset fg_dataset;

typedef struct fg_sweep_options {
    size_t exhaustive_max_nodes;
    size_t random_trials;
    size_t random_max_nodes;
    uint64_t seed;
    size_t fact_budget;
    unsigned threads; /* 0 = hardware concurrency */
} fg_sweep_options;

FG_API const char* fg_version(void);
FG_API const char* fg_status_name(fg_status status);

/* Message of the last failed call on this thread; "" if none. */
FG_API const char* fg_last_error(void);

/* Frees strings returned through char** out parameters. */
FG_API void fg_string_free(char* s);

FG_API fg_status fg_graph_parse(const char* text, fg_graph** out);
FG_API fg_status fg_graph_build(const char* const* nodes, size_t node_count, const char* const* causes,
                                const char* const* effects, size_t edge_count, fg_graph** out);
FG_API void fg_graph_free(fg_graph* g);
FG_API size_t fg_graph_node_count(const fg_graph* g);
FG_API size_t fg_graph_edge_count(const fg_graph* g);
FG_API fg_status fg_graph_serialize(const fg_graph* g, char** out);
FG_API fg_status fg_graph_is_immediate_cause(const fg_graph* g, const char* x, const char* y, int* out);
/* Newline-separated, ascending. */
FG_API fg_status fg_graph_descendants(const fg_graph* g, const char* x, char** out);

/* fact_budget 0 selects the default. */
FG_API fg_status fg_closure_compute(const fg_graph* g, size_t fact_budget, fg_closure** out);
FG_API void fg_closure_free(fg_closure* c);
FG_API size_t fg_closure_fact_count(const fg_closure* c);
FG_API fg_status fg_closure_report(const fg_closure* c, fg_format format, char** out);
/* Re-applies every rule; *missing receives the number of absent conclusions. */
FG_API fg_status fg_closure_rerun(const fg_closure* c, size_t* missing);
FG_API fg_status fg_independent(const fg_closure* c, const char* x, const char* y, const char* const* conditioning,
                                size_t conditioning_count, int* by_rules, int* by_oracle);

/* g may be NULL; otherwise every variable must be a node of g. */
FG_API fg_status fg_judgment_parse(const char* text, const fg_graph* g, fg_judgment** out);
FG_API void fg_judgment_free(fg_judgment* j);
FG_API fg_status fg_judgment_serialize(const fg_judgment* j, char** out);
/* Reduced "m/n". */
FG_API fg_status fg_judgment_probability(const fg_judgment* j, char** out);

FG_API fg_status fg_context_parse(const char* text, const fg_graph* g, fg_context** out);
FG_API void fg_context_free(fg_context* ctx);
FG_API fg_status fg_context_serialize(const fg_context* ctx, char** out);

FG_API fg_status fg_dataset_parse_csv(const char* text, const char* target, fg_dataset** out);
FG_API fg_status fg_dataset_table1(fg_dataset** out);
FG_API void fg_dataset_free(fg_dataset* d);
FG_API size_t fg_dataset_row_count(const fg_dataset* d);
FG_API fg_status fg_empirical_probability(const fg_dataset* d, const fg_context* ctx, const char* outcome,
                                          char** out);

/* `attribution` is "Var=value". *admissible is set even when the rule is
 * rejected; *weakened (optional) receives the conclusion when admissible. */
FG_API fg_status fg_weaken(const fg_closure* c, const fg_judgment* j, const char* attribution, fg_format format,
                           int* admissible, char** report, fg_judgment** weakened);

/* c may be NULL in empirical mode, d may be NULL in graphical mode.
 * epsilon is a decimal or "m/n"; NULL means 0. */
FG_API fg_status fg_check_if(const fg_closure* c, const fg_dataset* d, const fg_context* ctx, const char* target,
                             const char* protected_attr, const char* epsilon, fg_mode mode, fg_format format,
                             int* pass, char** report);
FG_API fg_status fg_check_intersect(const fg_closure* c, const fg_dataset* d, const fg_context* ctx,
                                    const char* target, const char* const* protected_attrs, size_t protected_count,
                                    const char* epsilon, fg_mode mode, fg_format format, int* pass, char** report);

FG_API void fg_sweep_options_default(fg_sweep_options* options);
FG_API fg_status fg_oracle_sweep(const fg_sweep_options* options, fg_format format, int* pass, char** report);

FG_API fg_status fg_demo_table1(fg_format format, int* pass, char** report);

#ifdef __cplusplus
}
#endif

#endif
