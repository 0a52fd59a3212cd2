//! C ABI over the readability metrics and the agent-output parsers.
//!
//! Conventions:
//! - every fallible call returns an [`NrStatus`] and writes results through out-pointers;
//! - on failure a message is available from [`nr_last_error`] on the same thread;
//! - strings are NUL-terminated UTF-8; strings returned by the library are
//!   freed with [`nr_string_free`], handles with their `*_free` function;
//! - panics never cross the boundary and are reported as `NR_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use newsroom::extraction::{self, EditorFeedback, ExtractError, ReaderNotes};
use newsroom::text_metrics::{self, Lexicon, MetricsError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    EmptyText = 3,
    SectionNotFound = 4,
    ParseError = 5,
    IoError = 6,
    InvalidArgument = 7,
    OutOfRange = 8,
    Panic = 99,
}

/// Familiar-word list for the Dale-Chall score.
pub struct NrLexicon(Lexicon);

/// Parsed reader notes.
pub struct NrNotes(ReaderNotes);

/// Parsed editor feedback.
pub struct NrFeedback(EditorFeedback);

/// Scores and the counts behind them.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NrScores {
    pub cli: f64,
    pub fkgl: f64,
    pub dcrs: f64,
    pub sentences: u32,
    pub words: u32,
    pub letters: u32,
    pub syllables: u32,
    pub difficult_words: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(NrStatus);

impl Fail {
    fn new(status: NrStatus, msg: impl Into<String>) -> Self {
        set_error(msg);
        Fail(status)
    }
}

impl From<MetricsError> for Fail {
    fn from(e: MetricsError) -> Self {
        let status = match e {
            MetricsError::EmptyText => NrStatus::EmptyText,
            MetricsError::EmptyLexicon => NrStatus::InvalidArgument,
            MetricsError::LexiconIo { .. } => NrStatus::IoError,
        };
        Fail::new(status, e.to_string())
    }
}

impl From<ExtractError> for Fail {
    fn from(e: ExtractError) -> Self {
        let status = match e {
            ExtractError::SectionNotFound(_) => NrStatus::SectionNotFound,
            _ => NrStatus::ParseError,
        };
        Fail::new(status, e.to_string())
    }
}

/// Runs `f`, clearing the last error first and mapping panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NrStatus::Ok,
        Ok(Err(Fail(s))) => s,
        Err(_) => {
            set_error("internal panic");
            NrStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::new(NrStatus::NullPointer, format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::new(NrStatus::InvalidUtf8, format!("`{name}` is not valid UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail::new(NrStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail::new(NrStatus::NullPointer, format!("`{name}` is null")))
}

fn into_c_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NULs replaced").into_raw()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn nr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn nr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn nr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The bundled Dale-Chall list.
#[no_mangle]
pub extern "C" fn nr_lexicon_default() -> *mut NrLexicon {
    Box::into_raw(Box::new(NrLexicon(Lexicon::dale_chall())))
}

/// Loads a word list, one word per line.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_lexicon_load(path: *const c_char, out: *mut *mut NrLexicon) -> NrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let lex = Lexicon::load(Path::new(str_arg(path, "path")?))?;
        *out = Box::into_raw(Box::new(NrLexicon(lex)));
        Ok(())
    })
}

/// Number of words in the list.
///
/// # Safety
/// `lexicon` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_lexicon_len(lexicon: *const NrLexicon) -> usize {
    lexicon.as_ref().map_or(0, |l| l.0.len())
}

/// # Safety
/// `lexicon` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nr_lexicon_free(lexicon: *mut NrLexicon) {
    if !lexicon.is_null() {
        drop(Box::from_raw(lexicon));
    }
}

/// Scores `text`. `lexicon` may be null for the bundled list.
///
/// # Safety
/// `text` must be a NUL-terminated string, `out` a valid pointer, `lexicon` null or live.
#[no_mangle]
pub unsafe extern "C" fn nr_score_text(lexicon: *const NrLexicon, text: *const c_char, out: *mut NrScores) -> NrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let text = str_arg(text, "text")?;
        let default;
        let lex = match lexicon.as_ref() {
            Some(l) => &l.0,
            None => {
                default = Lexicon::dale_chall();
                &default
            }
        };
        let s = text_metrics::score_all(text, lex)?;
        *out = NrScores {
            cli: s.cli,
            fkgl: s.fkgl,
            dcrs: s.dcrs,
            sentences: s.stats.sentence_count,
            words: s.stats.word_count,
            letters: s.stats.letter_count,
            syllables: s.stats.syllable_count,
            difficult_words: s.stats.difficult_word_count,
        };
        Ok(())
    })
}

/// Syllable estimate for one word.
///
/// # Safety
/// `word` must be a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_count_syllables(word: *const c_char, out: *mut u32) -> NrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = text_metrics::count_syllables(str_arg(word, "word")?);
        Ok(())
    })
}

/// Body of the first section titled `heading`; free with [`nr_string_free`].
///
/// # Safety
/// `raw` and `heading` must be NUL-terminated strings, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_extract_section(raw: *const c_char, heading: *const c_char, out: *mut *mut c_char) -> NrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let body = extraction::extract_section(str_arg(raw, "raw")?, str_arg(heading, "heading")?)?;
        *out = into_c_string(&body);
        Ok(())
    })
}

/// Containment of `candidate` in `source` and whether it reaches `threshold`.
/// `containment` may be null.
///
/// # Safety
/// String arguments must be NUL-terminated; `is_copy` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_detect_copy(
    candidate: *const c_char,
    source: *const c_char,
    threshold: f64,
    is_copy: *mut bool,
    containment: *mut f64,
) -> NrStatus {
    guard(|| {
        let is_copy = out_arg(is_copy, "is_copy")?;
        if !(0.0..=1.0).contains(&threshold) {
            return Err(Fail::new(NrStatus::InvalidArgument, format!("threshold {threshold} outside [0, 1]")));
        }
        let c = extraction::containment(str_arg(candidate, "candidate")?, str_arg(source, "source")?);
        *is_copy = c >= threshold;
        if let Some(out) = containment.as_mut() {
            *out = c;
        }
        Ok(())
    })
}

/// Parses reader output with extraction and explanation lists.
///
/// # Safety
/// `raw` must be a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_notes_parse(raw: *const c_char, out: *mut *mut NrNotes) -> NrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let notes = extraction::parse_notes(str_arg(raw, "raw")?)?;
        *out = Box::into_raw(Box::new(NrNotes(notes)));
        Ok(())
    })
}

/// # Safety
/// `notes` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_notes_extraction_count(notes: *const NrNotes) -> usize {
    notes.as_ref().map_or(0, |n| n.0.extraction_items.len())
}

/// # Safety
/// `notes` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_notes_explanation_count(notes: *const NrNotes) -> usize {
    notes.as_ref().map_or(0, |n| n.0.explanation_items.len())
}

unsafe fn item_at(items: &[String], index: usize, out: *mut *mut c_char) -> Result<(), Fail> {
    let out = out_arg(out, "out")?;
    *out = ptr::null_mut();
    let item = items
        .get(index)
        .ok_or_else(|| Fail::new(NrStatus::OutOfRange, format!("index {index} of {}", items.len())))?;
    *out = into_c_string(item);
    Ok(())
}

/// Explanation item `index`; free with [`nr_string_free`].
///
/// # Safety
/// `notes` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_notes_explanation(notes: *const NrNotes, index: usize, out: *mut *mut c_char) -> NrStatus {
    guard(|| item_at(&handle(notes, "notes")?.0.explanation_items, index, out))
}

/// Extraction item `index`; free with [`nr_string_free`].
///
/// # Safety
/// `notes` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_notes_extraction(notes: *const NrNotes, index: usize, out: *mut *mut c_char) -> NrStatus {
    guard(|| item_at(&handle(notes, "notes")?.0.extraction_items, index, out))
}

/// # Safety
/// `notes` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nr_notes_free(notes: *mut NrNotes) {
    if !notes.is_null() {
        drop(Box::from_raw(notes));
    }
}

/// Parses editor output; the advice list is required.
///
/// # Safety
/// `raw` must be a NUL-terminated string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_feedback_parse(raw: *const c_char, out: *mut *mut NrFeedback) -> NrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let fb = extraction::parse_feedback(str_arg(raw, "raw")?)?;
        *out = Box::into_raw(Box::new(NrFeedback(fb)));
        Ok(())
    })
}

/// # Safety
/// `feedback` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_feedback_advice_count(feedback: *const NrFeedback) -> usize {
    feedback.as_ref().map_or(0, |f| f.0.advice_items.len())
}

/// Advice item `index`; free with [`nr_string_free`].
///
/// # Safety
/// `feedback` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_feedback_advice(feedback: *const NrFeedback, index: usize, out: *mut *mut c_char) -> NrStatus {
    guard(|| item_at(&handle(feedback, "feedback")?.0.advice_items, index, out))
}

/// # Safety
/// `feedback` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nr_feedback_free(feedback: *mut NrFeedback) {
    if !feedback.is_null() {
        drop(Box::from_raw(feedback));
    }
}
