use std::ffi::{c_char, CStr, CString};
use std::ptr;

use multi_appell_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ma_string_free(s);
    out
}

fn last_error() -> String {
    let p = ma_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p).to_str().unwrap().to_owned() }
}

#[test]
fn charlier_polynomial_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        let a = c("1,2");
        assert_eq!(
            ma_charlier([1usize, 1].as_ptr(), 2, a.as_ptr(), &mut p),
            MaStatus::Ok
        );
        assert!(ma_last_error().is_null());

        let mut d = 0usize;
        assert_eq!(ma_poly_degree(p, &mut d), MaStatus::Ok);
        assert_eq!(d, 2);

        let mut s = ptr::null_mut();
        assert_eq!(ma_poly_eval(p, c("0").as_ptr(), &mut s), MaStatus::Ok);
        assert_eq!(take(s), "2");
        assert_eq!(ma_poly_eval(p, c("1/2").as_ptr(), &mut s), MaStatus::Ok);
        assert_eq!(take(s), "1/4");

        assert_eq!(ma_poly_to_json(p, false, &mut s), MaStatus::Ok);
        assert_eq!(
            take(s),
            r#"{"basis":"ff","omega":"1","coeffs":["2","-3","1"]}"#
        );
        assert_eq!(ma_poly_to_json(p, true, &mut s), MaStatus::Ok);
        assert_eq!(
            take(s),
            r#"{"basis":"monomial","omega":"1","coeffs":["2","-4","1"]}"#
        );

        // Delta C_{1,1} = C_{0,1} + C_{1,0} = 2x - 3
        let mut q = ptr::null_mut();
        assert_eq!(ma_poly_delta(p, &mut q), MaStatus::Ok);
        assert_eq!(ma_poly_eval(q, c("2").as_ptr(), &mut s), MaStatus::Ok);
        assert_eq!(take(s), "1");

        ma_poly_free(q);
        ma_poly_free(p);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut p = ptr::null_mut();
        let a = c("1,2");
        assert_eq!(
            ma_charlier([1usize].as_ptr(), 1, a.as_ptr(), &mut p),
            MaStatus::ArityMismatch
        );
        assert!(p.is_null());
        assert!(last_error().contains("arity"));

        assert_eq!(
            ma_charlier([1usize, 0].as_ptr(), 2, c("1,x").as_ptr(), &mut p),
            MaStatus::Parse
        );
        assert_eq!(
            ma_charlier(ptr::null(), 2, a.as_ptr(), &mut p),
            MaStatus::NullPointer
        );
        assert_eq!(
            ma_charlier([1usize, 0].as_ptr(), 2, a.as_ptr(), ptr::null_mut()),
            MaStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            ma_charlier([1usize, 0].as_ptr(), 2, bad.as_ptr().cast(), &mut p),
            MaStatus::InvalidUtf8
        );
        assert_eq!(
            ma_poly_degree(ptr::null(), ptr::null_mut()),
            MaStatus::NullPointer
        );

        ma_poly_free(ptr::null_mut());
        ma_family_free(ptr::null_mut());
        ma_string_free(ptr::null_mut());
    }
}

#[test]
fn appell_family_from_seed_json() {
    unsafe {
        let seed =
            c(r#"{"omega":"1/2","arity":2,"order":2,"coeffs":[["1","0","0"],["0","0"],["0"]]}"#);
        let mut f = ptr::null_mut();
        assert_eq!(ma_appell_build(seed.as_ptr(), &mut f), MaStatus::Ok);

        let (mut arity, mut order) = (0usize, 0usize);
        assert_eq!(ma_family_shape(f, &mut arity, &mut order), MaStatus::Ok);
        assert_eq!((arity, order), (2, 2));

        // the delta seed gives x^(|n|, 1/2); x^(2,1/2) at x = 3 is 3 * 5/2
        let mut p = ptr::null_mut();
        assert_eq!(
            ma_family_get(f, [1usize, 1].as_ptr(), 2, &mut p),
            MaStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(ma_poly_eval(p, c("3").as_ptr(), &mut s), MaStatus::Ok);
        assert_eq!(take(s), "15/2");
        ma_poly_free(p);

        assert_eq!(
            ma_family_get(f, [2usize, 1].as_ptr(), 2, &mut p),
            MaStatus::OutOfRange
        );
        assert_eq!(
            ma_family_get(f, [1usize].as_ptr(), 1, &mut p),
            MaStatus::ArityMismatch
        );

        assert_eq!(ma_family_to_json(f, false, &mut s), MaStatus::Ok);
        let json = take(s);
        assert!(
            json.starts_with(r#"{"omega":"1/2","arity":2,"order":2,"members":["#),
            "{json}"
        );

        assert_eq!(
            ma_family_identify_charlier(f, 2, &mut s),
            MaStatus::VerificationFailed
        );
        assert!(last_error().contains("basis"));
        ma_family_free(f);

        let zero = c(r#"{"omega":"1","arity":1,"order":1,"coeffs":["0","1"]}"#);
        assert_eq!(
            ma_appell_build(zero.as_ptr(), &mut f),
            MaStatus::DegenerateSeed
        );
    }
}

#[test]
fn charlier_family_identifies_itself() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            ma_charlier_family(c("1/2,3").as_ptr(), 4, &mut f),
            MaStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(ma_family_identify_charlier(f, 4, &mut s), MaStatus::Ok);
        assert_eq!(take(s), "(1/2,3)");
        ma_family_free(f);
    }
}

#[test]
fn verify_suites() {
    unsafe {
        let mut s = ptr::null_mut();
        let a = c("1,2");
        assert_eq!(
            ma_verify(c("addition").as_ptr(), a.as_ptr(), 3, &mut s),
            MaStatus::Ok
        );
        let records = take(s);
        assert!(records.contains(r#""verdict":"pass""#), "{records}");

        assert_eq!(
            ma_verify(c("recurrences").as_ptr(), a.as_ptr(), 3, &mut s),
            MaStatus::VerificationFailed
        );
        assert!(take(s).contains(r#""verdict":"fail""#));

        let mut untouched = ptr::null_mut();
        assert_eq!(
            ma_verify(c("nonsense").as_ptr(), a.as_ptr(), 3, &mut untouched),
            MaStatus::InvalidArgument
        );
        assert!(untouched.is_null());
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            ma_charlier(ptr::null(), 2, c("1,2").as_ptr(), &mut p),
            MaStatus::NullPointer
        );
    }
    std::thread::spawn(|| assert!(ma_last_error().is_null()))
        .join()
        .unwrap();
    assert!(!ma_last_error().is_null());
}

#[test]
fn header_compiles_as_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/multi_appell.h");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\n\
             int main(void) {{\n\
               size_t n[2] = {{1, 1}};\n\
               MaPoly *p = 0;\n\
               MaStatus st = ma_charlier(n, 2, \"1,2\", &p);\n\
               ma_poly_free(p);\n\
               return st == MA_STATUS_OK ? 0 : 1;\n\
             }}\n"
        ),
    )
    .unwrap();
    let status = match std::process::Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler ({cc}); skipping");
            return;
        }
    };
    assert!(status.success());
}
