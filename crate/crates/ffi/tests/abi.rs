use std::ffi::{c_char, CStr, CString};
use std::ptr;

use newsroom_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    nr_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = nr_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn scores_match_reference_values() {
    unsafe {
        let lex = nr_lexicon_default();
        assert!(nr_lexicon_len(lex) > 2900);
        let mut s = NrScores::default();
        let text = c("The quick brown fox jumps over the lazy dog.");
        assert_eq!(nr_score_text(lex, text.as_ptr(), &mut s), NrStatus::Ok);
        assert!((s.cli - 3.78).abs() < 0.01 && (s.fkgl - 2.34).abs() < 0.01 && (s.dcrs - 0.45).abs() < 0.01);
        assert_eq!((s.sentences, s.words, s.letters, s.syllables, s.difficult_words), (1, 9, 35, 11, 0));
        let mut with_null_lex = NrScores::default();
        assert_eq!(nr_score_text(ptr::null(), text.as_ptr(), &mut with_null_lex), NrStatus::Ok);
        assert_eq!(with_null_lex, s);
        assert!(nr_last_error().is_null());
        nr_lexicon_free(lex);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut s = NrScores::default();
        assert_eq!(nr_score_text(ptr::null(), c("   ").as_ptr(), &mut s), NrStatus::EmptyText);
        assert_eq!(last_error(), "text contains no words");
        assert_eq!(nr_score_text(ptr::null(), ptr::null(), &mut s), NrStatus::NullPointer);
        assert!(last_error().contains("text"));
        let bad = [0xffu8, 0xfe, 0];
        assert_eq!(nr_score_text(ptr::null(), bad.as_ptr().cast(), &mut s), NrStatus::InvalidUtf8);
        let mut lex = ptr::null_mut();
        assert_eq!(nr_lexicon_load(c("/nonexistent/words.txt").as_ptr(), &mut lex), NrStatus::IoError);
        assert!(lex.is_null());
    }
}

#[test]
fn syllables_and_sections() {
    unsafe {
        let mut n = 0u32;
        for (w, want) in [("cat", 1), ("over", 2), ("make", 1)] {
            assert_eq!(nr_count_syllables(c(w).as_ptr(), &mut n), NrStatus::Ok);
            assert_eq!(n, want, "{w}");
        }
        let mut out = ptr::null_mut();
        let raw = c("## Improvement\n1. x\n## Revised Article\nShort text.");
        assert_eq!(nr_extract_section(raw.as_ptr(), c("Revised Article").as_ptr(), &mut out), NrStatus::Ok);
        assert_eq!(take(out), "Short text.");
        assert_eq!(nr_extract_section(raw.as_ptr(), c("Advice").as_ptr(), &mut out), NrStatus::SectionNotFound);
        assert!(out.is_null());
    }
}

#[test]
fn copy_detection() {
    unsafe {
        let src = c("the mobile lab runs deep learning on blood samples in the field");
        let (mut copy, mut ratio) = (false, 0.0);
        assert_eq!(nr_detect_copy(src.as_ptr(), src.as_ptr(), 0.95, &mut copy, &mut ratio), NrStatus::Ok);
        assert!(copy);
        assert_eq!(ratio, 1.0);
        let other = c("cats purr softly");
        assert_eq!(nr_detect_copy(other.as_ptr(), src.as_ptr(), 0.95, &mut copy, ptr::null_mut()), NrStatus::Ok);
        assert!(!copy);
        assert_eq!(nr_detect_copy(src.as_ptr(), src.as_ptr(), 1.5, &mut copy, ptr::null_mut()), NrStatus::InvalidArgument);
    }
}

#[test]
fn notes_and_feedback_handles() {
    let notes_text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/cases/notes_iter3.md")).unwrap();
    let advice_text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/cases/advice_iter1.md")).unwrap();
    unsafe {
        let mut notes = ptr::null_mut();
        assert_eq!(nr_notes_parse(c(&notes_text).as_ptr(), &mut notes), NrStatus::Ok);
        assert_eq!((nr_notes_extraction_count(notes), nr_notes_explanation_count(notes)), (5, 5));
        let mut item = ptr::null_mut();
        assert_eq!(nr_notes_extraction(notes, 4, &mut item), NrStatus::Ok);
        assert_eq!(take(item), "\"blockchain\" - third paragraph.");
        assert_eq!(nr_notes_explanation(notes, 5, &mut item), NrStatus::OutOfRange);
        nr_notes_free(notes);

        let mut fb = ptr::null_mut();
        assert_eq!(nr_feedback_parse(c(&advice_text).as_ptr(), &mut fb), NrStatus::Ok);
        assert_eq!(nr_feedback_advice_count(fb), 4);
        assert_eq!(nr_feedback_advice(fb, 0, &mut item), NrStatus::Ok);
        assert_eq!(take(item), "Simplify technical terms");
        nr_feedback_free(fb);

        assert_eq!(nr_feedback_parse(c("## Advice\nnothing numbered").as_ptr(), &mut fb), NrStatus::ParseError);
        assert!(fb.is_null());
        assert_eq!(nr_feedback_advice_count(ptr::null()), 0);
        nr_notes_free(ptr::null_mut());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(nr_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/newsroom.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 18, "{exports:?}");
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let main = dir.path().join("main.c");
    std::fs::write(
        &main,
        "#include \"newsroom.h\"\nint main(void) { NrScores s; NrStatus st = nr_score_text(0, \"Hi.\", &s); return st == NR_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&main)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<String, ()> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match std::process::Command::new(&cc).arg("--version").output() {
        Ok(o) if o.status.success() => Ok(cc),
        _ => Err(()),
    }
}
