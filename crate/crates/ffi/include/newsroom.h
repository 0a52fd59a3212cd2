#ifndef NEWSROOM_H
#define NEWSROOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NrStatus {
  NR_STATUS_OK = 0,
  NR_STATUS_NULL_POINTER = 1,
  NR_STATUS_INVALID_UTF8 = 2,
  NR_STATUS_EMPTY_TEXT = 3,
  NR_STATUS_SECTION_NOT_FOUND = 4,
  NR_STATUS_PARSE_ERROR = 5,
  NR_STATUS_IO_ERROR = 6,
  NR_STATUS_INVALID_ARGUMENT = 7,
  NR_STATUS_OUT_OF_RANGE = 8,
  NR_STATUS_PANIC = 99,
} NrStatus;

/**
 * Parsed editor feedback.
 */
typedef struct NrFeedback NrFeedback;

/**
 * Familiar-word list for the Dale-Chall score.
 */
typedef struct NrLexicon NrLexicon;

/**
 * Parsed reader notes.
 */
typedef struct NrNotes NrNotes;

/**
 * Scores and the counts behind them.
 */
typedef struct NrScores {
  double cli;
  double fkgl;
  double dcrs;
  uint32_t sentences;
  uint32_t words;
  uint32_t letters;
  uint32_t syllables;
  uint32_t difficult_words;
} NrScores;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *nr_last_error(void);

/**
 * Library version, static storage.
 */
const char *nr_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void nr_string_free(char *s);

/**
 * The bundled Dale-Chall list.
 */
struct NrLexicon *nr_lexicon_default(void);

/**
 * Loads a word list, one word per line.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` a valid pointer.
 */
enum NrStatus nr_lexicon_load(const char *path, struct NrLexicon **out);

/**
 * Number of words in the list.
 *
 * # Safety
 * `lexicon` must be null or a live handle.
 */
size_t nr_lexicon_len(const struct NrLexicon *lexicon);

/**
 * # Safety
 * `lexicon` must be null or a handle not yet freed.
 */
void nr_lexicon_free(struct NrLexicon *lexicon);

/**
 * Scores `text`. `lexicon` may be null for the bundled list.
 *
 * # Safety
 * `text` must be a NUL-terminated string, `out` a valid pointer, `lexicon` null or live.
 */
enum NrStatus nr_score_text(const struct NrLexicon *lexicon,
                            const char *text,
                            struct NrScores *out);

/**
 * Syllable estimate for one word.
 *
 * # Safety
 * `word` must be a NUL-terminated string, `out` a valid pointer.
 */
enum NrStatus nr_count_syllables(const char *word, uint32_t *out);

/**
 * Body of the first section titled `heading`; free with [`nr_string_free`].
 *
 * # Safety
 * `raw` and `heading` must be NUL-terminated strings, `out` a valid pointer.
 */
enum NrStatus nr_extract_section(const char *raw, const char *heading, char **out);

/**
 * Containment of `candidate` in `source` and whether it reaches `threshold`.
 * `containment` may be null.
 *
 * # Safety
 * String arguments must be NUL-terminated; `is_copy` a valid pointer.
 */
enum NrStatus nr_detect_copy(const char *candidate,
                             const char *source,
                             double threshold,
                             bool *is_copy,
                             double *containment);

/**
 * Parses reader output with extraction and explanation lists.
 *
 * # Safety
 * `raw` must be a NUL-terminated string, `out` a valid pointer.
 */
enum NrStatus nr_notes_parse(const char *raw, struct NrNotes **out);

/**
 * # Safety
 * `notes` must be null or a live handle.
 */
size_t nr_notes_extraction_count(const struct NrNotes *notes);

/**
 * # Safety
 * `notes` must be null or a live handle.
 */
size_t nr_notes_explanation_count(const struct NrNotes *notes);

/**
 * Explanation item `index`; free with [`nr_string_free`].
 *
 * # Safety
 * `notes` must be a live handle, `out` a valid pointer.
 */
enum NrStatus nr_notes_explanation(const struct NrNotes *notes, size_t index, char **out);

/**
 * Extraction item `index`; free with [`nr_string_free`].
 *
 * # Safety
 * `notes` must be a live handle, `out` a valid pointer.
 */
enum NrStatus nr_notes_extraction(const struct NrNotes *notes, size_t index, char **out);

/**
 * # Safety
 * `notes` must be null or a handle not yet freed.
 */
void nr_notes_free(struct NrNotes *notes);

/**
 * Parses editor output; the advice list is required.
 *
 * # Safety
 * `raw` must be a NUL-terminated string, `out` a valid pointer.
 */
enum NrStatus nr_feedback_parse(const char *raw, struct NrFeedback **out);

/**
 * # Safety
 * `feedback` must be null or a live handle.
 */
size_t nr_feedback_advice_count(const struct NrFeedback *feedback);

/**
 * Advice item `index`; free with [`nr_string_free`].
 *
 * # Safety
 * `feedback` must be a live handle, `out` a valid pointer.
 */
enum NrStatus nr_feedback_advice(const struct NrFeedback *feedback, size_t index, char **out);

/**
 * # Safety
 * `feedback` must be null or a handle not yet freed.
 */
void nr_feedback_free(struct NrFeedback *feedback);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEWSROOM_H */
