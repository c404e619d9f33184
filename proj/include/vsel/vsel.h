// Copyright 2026 The vsel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the vsel library. Every function returns a vsel_status;
 * on failure vsel_last_error() describes the problem (per thread). Strings
 * handed out through char** parameters are owned by the caller and must be
 * released with vsel_string_free. JSON outputs have sorted keys. */
#ifndef VSEL_VSEL_H_
#define VSEL_VSEL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VSEL_API __declspec(dllexport)
#else
#define VSEL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int vsel_status;

enum {
  VSEL_OK = 0,
  VSEL_E_LEX = 1,
  VSEL_E_PARSE = 2,
  VSEL_E_UNSUPPORTED = 3,
  VSEL_E_GRAPH_TOO_LARGE = 4,
  VSEL_E_SCHEMA = 5,
  VSEL_E_INDEX = 6,
  VSEL_E_SHAPE = 7,
  VSEL_E_NOT_SCALAR = 8,
  VSEL_E_LENGTH_MISMATCH = 9,
  VSEL_E_EMPTY_GRAPH = 10,
  VSEL_E_VOCAB_MISMATCH = 11,
  VSEL_E_EMPTY_SPLIT = 12,
  VSEL_E_INVALID_RANKING = 13,
  VSEL_E_NO_ELIGIBLE = 14,
  VSEL_E_BAD_K = 15,
  VSEL_E_IO = 16,
  VSEL_E_CONFIG = 17,
  VSEL_E_INVALID_ARGUMENT = 18,
  VSEL_E_INTERNAL = 99
};

typedef struct vsel_vocab vsel_vocab;
typedef struct vsel_graph vsel_graph;
typedef struct vsel_model vsel_model;

VSEL_API const char* vsel_version(void);
VSEL_API const char* vsel_status_name(vsel_status status);
/* Message of the last failure on this thread; "" after a success. */
VSEL_API const char* vsel_last_error(void);
VSEL_API void vsel_string_free(char* s);

/* Run configuration: reads the file, applies GRAVES_* environment
 * overrides, resolves relative paths against the file's directory and
 * checks that they exist. The result is the normalized config as JSON. */
VSEL_API vsel_status vsel_config_resolve(const char* path, char** out_json);
/* Same checks on an in-memory document. */
VSEL_API vsel_status vsel_config_normalize(const char* json, const char* base_dir, char** out_json);

VSEL_API vsel_status vsel_vocab_load(const char* path, vsel_vocab** out);
VSEL_API void vsel_vocab_free(vsel_vocab* vocab);
VSEL_API vsel_status vsel_vocab_size(const vsel_vocab* vocab, size_t* out);
VSEL_API vsel_status vsel_vocab_fingerprint(const vsel_vocab* vocab, char** out);

/* Source text to program graph. diagnostics_json (may be NULL) receives a
 * JSON array of non-fatal notes. property takes canonical or SV-COMP
 * style names. */
VSEL_API vsel_status vsel_graph_extract(const vsel_vocab* vocab, const char* source, const char* program_id,
                                        const char* property, size_t node_cap, vsel_graph** out,
                                        char** diagnostics_json);
VSEL_API vsel_status vsel_graph_load(const char* path, vsel_graph** out);
VSEL_API vsel_status vsel_graph_from_json(const char* json, vsel_graph** out);
VSEL_API vsel_status vsel_graph_to_json(const vsel_graph* graph, char** out);
VSEL_API vsel_status vsel_graph_save(const vsel_graph* graph, const char* path);
VSEL_API vsel_status vsel_graph_set_property(vsel_graph* graph, const char* property);
/* {"id","property","num_nodes","edges":{"AST":n,...}} */
VSEL_API vsel_status vsel_graph_info(const vsel_graph* graph, char** out_json);
VSEL_API void vsel_graph_free(vsel_graph* graph);

/* model_config_json uses the "model" block keys plus "vocab_size";
 * portfolio_json is an array of verifier names. */
VSEL_API vsel_status vsel_model_init(const char* model_config_json, const char* portfolio_json,
                                     const char* vocab_fingerprint, uint64_t seed, vsel_model** out);
VSEL_API vsel_status vsel_model_load(const char* path, vsel_model** out);
VSEL_API vsel_status vsel_model_save(const vsel_model* model, const char* path);
VSEL_API vsel_status vsel_model_info(const vsel_model* model, char** out_json);
/* {"graph_id","property","ranking":[{"rank","verifier","index","score"}...]} */
VSEL_API vsel_status vsel_model_rank(const vsel_model* model, const vsel_graph* graph, char** out_json);
VSEL_API void vsel_model_free(vsel_model* model);

/* request: {"inputs":[paths],"out_dir","vocabulary","property","node_cap","jobs"}.
 * Files that fail are reported in the summary; the call itself succeeds. */
VSEL_API vsel_status vsel_extract_corpus(const char* request_json, char** summary_json);

typedef void (*vsel_epoch_fn)(size_t epoch, double train_loss, double val_loss, double lr, void* user);

/* run_config_json as produced by vsel_config_resolve. */
VSEL_API vsel_status vsel_train(const char* run_config_json, vsel_epoch_fn on_epoch, void* user,
                                vsel_model** out_model, char** summary_json);

/* options: {"subset":"test"|"all","ks":[...]}. table_text may be NULL. */
VSEL_API vsel_status vsel_evaluate(const vsel_model* model, const char* run_config_json, const char* options_json,
                                   char** report_json, char** table_text);

/* options use the config's "explain" block keys. vocab (may be NULL) names
 * node kinds in the outputs. dot may be NULL. */
VSEL_API vsel_status vsel_explain(const vsel_model* model, const vsel_graph* graph, const vsel_vocab* vocab,
                                  const char* options_json, char** report_json, char** dot);

#ifdef __cplusplus
}
#endif

#endif /* VSEL_VSEL_H_ */
