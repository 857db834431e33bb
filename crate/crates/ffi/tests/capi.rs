use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use hypersub_ffi::*;

fn fixture(name: &str) -> *mut HsConfig {
    let name = CString::new(name).unwrap();
    let mut cfg = ptr::null_mut();
    assert_eq!(unsafe { hs_config_fixture(name.as_ptr(), &mut cfg) }, HsStatus::Ok);
    assert!(!cfg.is_null());
    cfg
}

#[test]
fn hypercatalan_values() {
    let mut v = 0u64;
    for (n, want) in [(3, 1), (4, 2), (5, 10), (6, 70), (7, 574)] {
        assert_eq!(unsafe { hs_hypercatalan2(n, &mut v) }, HsStatus::Ok);
        assert_eq!(v, want);
    }
    assert_eq!(unsafe { hs_hypercatalan2(2, &mut v) }, HsStatus::InvalidConfig);
    assert_eq!(unsafe { hs_hypercatalan2(6, ptr::null_mut()) }, HsStatus::NullPointer);
}

#[test]
fn planar_tiles_not_separated() {
    let cfg = fixture("planar5");
    assert_eq!(unsafe { hs_config_num_points(cfg) }, 5);
    let (mut sep, mut pos, mut neg) = (true, 0u64, 0u64);
    // [2,2345] and [4,1234]
    let st = unsafe { hs_tiles_separated(cfg, 0b10, 0b11110, 0b1000, 0b1111, &mut sep, &mut pos, &mut neg) };
    assert_eq!(st, HsStatus::Ok);
    assert!(!sep);
    assert_eq!((pos, neg), (0b1001, 0b10100));
    let st = unsafe { hs_tiles_separated(cfg, 0b1, 0b1, 0b10, 0b10, &mut sep, ptr::null_mut(), ptr::null_mut()) };
    assert_eq!(st, HsStatus::Ok);
    assert!(sep);
    assert_eq!(
        unsafe { hs_tiles_separated(cfg, 0b100, 0b1, 0, 0b1, &mut sep, ptr::null_mut(), ptr::null_mut()) },
        HsStatus::InvalidTile
    );
    assert_eq!(
        unsafe { hs_tiles_separated(cfg, 0, 0b100000, 0, 0b1, &mut sep, ptr::null_mut(), ptr::null_mut()) },
        HsStatus::LabelOutOfRange
    );
    unsafe { hs_config_free(cfg) };
}

#[test]
fn configuration_from_ints_and_counts() {
    let coords: [i64; 12] = [2, 0, 4, 0, 6, 2, 4, 4, 2, 4, 0, 2];
    let mut cfg = ptr::null_mut();
    assert_eq!(unsafe { hs_config_from_ints(2, 6, coords.as_ptr(), &mut cfg) }, HsStatus::Ok);
    let mut count = 0usize;
    assert_eq!(unsafe { hs_count_fine(cfg, 1, 1000, &mut count) }, HsStatus::Ok);
    assert_eq!(count, 14);
    assert_eq!(unsafe { hs_count_fine(cfg, 2, 5, &mut count) }, HsStatus::CapExceeded);
    assert_eq!(unsafe { hs_count_fine(cfg, 6, 5, &mut count) }, HsStatus::LevelOutOfRange);
    unsafe { hs_config_free(cfg) };
    let line: [i64; 2] = [0, 0];
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { hs_config_from_ints(2, 1, line.as_ptr(), &mut bad) }, HsStatus::InvalidConfig);
    assert!(bad.is_null());
}

#[test]
fn subdivision_round_trip_and_coherence() {
    let cfg = fixture("hexagon");
    let w: [i64; 6] = [3, 0, 1, 0, 2, 0];
    let mut sub = ptr::null_mut();
    assert_eq!(unsafe { hs_coherent_subdivision(cfg, 2, w.as_ptr(), 6, &mut sub) }, HsStatus::Ok);
    assert_eq!(unsafe { hs_subdivision_level(sub) }, 2);
    let mut coherent = false;
    assert_eq!(unsafe { hs_is_coherent(cfg, sub, &mut coherent) }, HsStatus::Ok);
    assert!(coherent);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { hs_subdivision_to_json(sub, &mut json) }, HsStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { hs_subdivision_from_json(json, &mut back) }, HsStatus::Ok);
    let (mut a, mut b) = (0usize, 0usize);
    unsafe {
        hs_subdivision_num_cells(cfg, sub, &mut a);
        hs_subdivision_num_cells(cfg, back, &mut b);
    }
    assert_eq!(a, b);
    assert!(a > 0);
    unsafe {
        hs_string_free(json);
        hs_subdivision_free(sub);
        hs_subdivision_free(back);
    }
    let text = CString::new(
        r#"{"k":2,"cells":[{"X":[],"Y":[1,2,3]},{"X":[],"Y":[1,3,4]},{"X":[],"Y":[1,4,5]},{"X":[],"Y":[1,5,6]},{"X":[1],"Y":[1,2,3,4,5,6]}]}"#,
    )
    .unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { hs_subdivision_from_json(text.as_ptr(), &mut s) }, HsStatus::Ok);
    assert_eq!(unsafe { hs_is_coherent(cfg, s, &mut coherent) }, HsStatus::InvalidSubdivision);
    unsafe {
        hs_subdivision_free(s);
        hs_config_free(cfg);
    }
}

#[test]
fn errors_and_strings() {
    let mut cfg = ptr::null_mut();
    let bad = CString::new("nonagon").unwrap();
    assert_eq!(unsafe { hs_config_fixture(bad.as_ptr(), &mut cfg) }, HsStatus::Parse);
    let junk = CString::new("{").unwrap();
    assert_eq!(unsafe { hs_config_from_json(junk.as_ptr(), &mut cfg) }, HsStatus::Parse);
    assert_eq!(unsafe { hs_config_from_json(ptr::null(), &mut cfg) }, HsStatus::NullPointer);
    let msg = unsafe { CStr::from_ptr(hs_status_message(HsStatus::CapExceeded)) };
    assert_eq!(msg.to_str().unwrap(), "enumeration cap exceeded");
    let v = unsafe { CStr::from_ptr(hs_version()) };
    assert!(v.to_str().unwrap().starts_with("hypersub "));
    unsafe {
        hs_config_free(ptr::null_mut());
        hs_subdivision_free(ptr::null_mut());
        hs_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { hs_config_num_points(ptr::null()) }, 0);
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include").join("hypersub.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["hs_config_fixture", "hs_tiles_separated", "hs_string_free", "HS_STATUS_PANIC"] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let src = std::env::temp_dir().join("hypersub_header_check.c");
    std::fs::write(
        &src,
        "#include \"hypersub.h\"\nint main(void) { HsConfig *c = 0; HsStatus s = hs_config_fixture(\"hexagon\", &c); hs_config_free(c); return s == HS_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    match Command::new("cc").arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg("-I").arg(dir.join("include")).arg(&src).status() {
        Ok(st) => assert!(st.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler; header syntax check skipped"),
    }
}
