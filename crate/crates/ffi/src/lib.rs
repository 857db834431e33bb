//! C ABI over `hypersub_core`: opaque configuration and subdivision handles,
//! status codes and caller-freed strings.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypersub_core::coherent::{coherent_subdivision, is_coherent};
use hypersub_core::enumeration::{count_fine, hypercatalan2};
use hypersub_core::tiles::{tiles_separated, CellsJson, HypersimplicialSubdivision, Separation, Tile};
use hypersub_core::{HypersubError, PointConfiguration, Rational};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidConfig = 2,
    LabelOutOfRange = 3,
    InvalidTile = 4,
    LevelOutOfRange = 5,
    CapExceeded = 6,
    NotSeparated = 7,
    InvalidSubdivision = 8,
    Unsupported = 9,
    Parse = 10,
    Internal = 11,
    InvalidUtf8 = 12,
    Overflow = 13,
    Panic = 14,
}

impl From<&HypersubError> for HsStatus {
    fn from(e: &HypersubError) -> Self {
        match e {
            HypersubError::InvalidConfig(_) => HsStatus::InvalidConfig,
            HypersubError::LabelOutOfRange { .. } => HsStatus::LabelOutOfRange,
            HypersubError::InvalidTile(_) => HsStatus::InvalidTile,
            HypersubError::LevelOutOfRange { .. } => HsStatus::LevelOutOfRange,
            HypersubError::CapExceeded(_) => HsStatus::CapExceeded,
            HypersubError::NotSeparated(_) => HsStatus::NotSeparated,
            HypersubError::InvalidSubdivision(_) => HsStatus::InvalidSubdivision,
            HypersubError::Unsupported(_) => HsStatus::Unsupported,
            HypersubError::Parse(_) => HsStatus::Parse,
            HypersubError::Internal(_) => HsStatus::Internal,
        }
    }
}

/// Opaque point configuration.
pub struct HsConfig(PointConfiguration);

/// Opaque hypersimplicial subdivision.
pub struct HsSubdivision(HypersimplicialSubdivision);

fn guard(f: impl FnOnce() -> Result<(), HsStatus>) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => HsStatus::Panic,
    }
}

fn core<T>(r: hypersub_core::Result<T>) -> Result<T, HsStatus> {
    r.map_err(|e| HsStatus::from(&e))
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, HsStatus> {
    if s.is_null() {
        return Err(HsStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| HsStatus::InvalidUtf8)
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, HsStatus> {
    p.as_mut().ok_or(HsStatus::NullPointer)
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, HsStatus> {
    p.as_ref().ok_or(HsStatus::NullPointer)
}

fn tile(x: u64, y: u64) -> Result<Tile, HsStatus> {
    core(Tile::new(x, y))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn hs_status_message(status: HsStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        HsStatus::Ok => b"ok\0",
        HsStatus::NullPointer => b"null pointer argument\0",
        HsStatus::InvalidConfig => b"invalid point configuration\0",
        HsStatus::LabelOutOfRange => b"label out of range\0",
        HsStatus::InvalidTile => b"invalid tile\0",
        HsStatus::LevelOutOfRange => b"level out of range\0",
        HsStatus::CapExceeded => b"enumeration cap exceeded\0",
        HsStatus::NotSeparated => b"tiles are not separated\0",
        HsStatus::InvalidSubdivision => b"invalid subdivision\0",
        HsStatus::Unsupported => b"unsupported input\0",
        HsStatus::Parse => b"parse error\0",
        HsStatus::Internal => b"internal error\0",
        HsStatus::InvalidUtf8 => b"string is not UTF-8\0",
        HsStatus::Overflow => b"result does not fit the output type\0",
        HsStatus::Panic => b"panic inside the library\0",
    };
    s.as_ptr().cast()
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!("hypersub ", env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a configuration of `n` points in dimension `dim` from `n * dim`
/// row-major integer coordinates.
///
/// # Safety
/// `coords` must point to `n * dim` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_config_from_ints(dim: usize, n: usize, coords: *const i64, out: *mut *mut HsConfig) -> HsStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        if coords.is_null() {
            return Err(HsStatus::NullPointer);
        }
        let len = n.checked_mul(dim).ok_or(HsStatus::Overflow)?;
        let raw = std::slice::from_raw_parts(coords, len);
        let pts: Vec<Vec<Rational>> = raw.chunks(dim.max(1)).map(|c| c.iter().map(|&v| Rational::from_int(v)).collect()).collect();
        let cfg = core(PointConfiguration::new(dim, pts))?;
        *out = Box::into_raw(Box::new(HsConfig(cfg)));
        Ok(())
    })
}

/// Parses a configuration from JSON (`{"dim": d, "points": [[..], ..]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_config_from_json(json: *const c_char, out: *mut *mut HsConfig) -> HsStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let cfg = core(PointConfiguration::from_json(str_arg(json)?))?;
        *out = Box::into_raw(Box::new(HsConfig(cfg)));
        Ok(())
    })
}

/// Loads a named fixture such as `hexagon` or `cyclic-6-3`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_config_fixture(name: *const c_char, out: *mut *mut HsConfig) -> HsStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let f = core(hypersub_core::cli::fixture(str_arg(name)?))?;
        *out = Box::into_raw(Box::new(HsConfig(f.config)));
        Ok(())
    })
}

/// Releases a configuration; null is ignored.
///
/// # Safety
/// `cfg` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hs_config_free(cfg: *mut HsConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Number of points; 0 for null.
///
/// # Safety
/// `cfg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_config_num_points(cfg: *const HsConfig) -> usize {
    cfg.as_ref().map_or(0, |c| c.0.n())
}

/// Separation of the tiles `[x1,y1]` and `[x2,y2]` given as label bitmasks
/// (bit `i-1` for label `i`). When not separated, the circuit is written to
/// `circuit_pos` / `circuit_neg` (both may be null).
///
/// # Safety
/// `cfg` must be a live handle; output pointers must be writable or null
/// where allowed.
#[no_mangle]
pub unsafe extern "C" fn hs_tiles_separated(
    cfg: *const HsConfig,
    x1: u64,
    y1: u64,
    x2: u64,
    y2: u64,
    separated: *mut bool,
    circuit_pos: *mut u64,
    circuit_neg: *mut u64,
) -> HsStatus {
    guard(|| {
        let cfg = &ref_arg(cfg)?.0;
        let sep = out_arg(separated)?;
        let (a, b) = (tile(x1, y1)?, tile(x2, y2)?);
        let limit = if cfg.n() >= 64 { u64::MAX } else { (1u64 << cfg.n()) - 1 };
        if (y1 | y2) & !limit != 0 {
            return Err(HsStatus::LabelOutOfRange);
        }
        match core(tiles_separated(cfg, &a, &b))? {
            Separation::Separated { .. } => *sep = true,
            Separation::NotSeparated { circuit } => {
                *sep = false;
                if let Some(p) = circuit_pos.as_mut() {
                    *p = circuit.positive;
                }
                if let Some(q) = circuit_neg.as_mut() {
                    *q = circuit.negative;
                }
            }
        }
        Ok(())
    })
}

/// Number of hypertriangulations of the second level of the `n`-gon.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_hypercatalan2(n: usize, out: *mut u64) -> HsStatus {
    guard(|| {
        let out = out_arg(out)?;
        let v = core(hypercatalan2(n))?;
        *out = u64::try_from(v).map_err(|_| HsStatus::Overflow)?;
        Ok(())
    })
}

/// Number of fine subdivisions of level `k`, failing with `CapExceeded`
/// beyond `cap`.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_count_fine(cfg: *const HsConfig, k: usize, cap: usize, out: *mut usize) -> HsStatus {
    guard(|| {
        let cfg = &ref_arg(cfg)?.0;
        let out = out_arg(out)?;
        *out = core(count_fine(cfg, k, cap))?;
        Ok(())
    })
}

/// Parses a subdivision from JSON (`{"k": k, "cells": [{"X": [..], "Y": [..]}, ..]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_subdivision_from_json(json: *const c_char, out: *mut *mut HsSubdivision) -> HsStatus {
    guard(|| {
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let j: CellsJson = serde_json::from_str(str_arg(json)?).map_err(|_| HsStatus::Parse)?;
        let s = core(HypersimplicialSubdivision::from_json(&j))?;
        *out = Box::into_raw(Box::new(HsSubdivision(s)));
        Ok(())
    })
}

/// Coherent subdivision of level `k` for integer weights, one per point.
///
/// # Safety
/// `cfg` must be a live handle, `weights` must hold `len` values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn hs_coherent_subdivision(
    cfg: *const HsConfig,
    k: usize,
    weights: *const i64,
    len: usize,
    out: *mut *mut HsSubdivision,
) -> HsStatus {
    guard(|| {
        let cfg = &ref_arg(cfg)?.0;
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        if weights.is_null() {
            return Err(HsStatus::NullPointer);
        }
        if len != cfg.n() {
            return Err(HsStatus::InvalidConfig);
        }
        let w: Vec<Rational> = std::slice::from_raw_parts(weights, len).iter().map(|&v| Rational::from_int(v)).collect();
        let s = core(coherent_subdivision(cfg, k, &w))?;
        *out = Box::into_raw(Box::new(HsSubdivision(s)));
        Ok(())
    })
}

/// Releases a subdivision; null is ignored.
///
/// # Safety
/// `sub` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hs_subdivision_free(sub: *mut HsSubdivision) {
    if !sub.is_null() {
        drop(Box::from_raw(sub));
    }
}

/// Level of a subdivision; 0 for null.
///
/// # Safety
/// `sub` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_subdivision_level(sub: *const HsSubdivision) -> usize {
    sub.as_ref().map_or(0, |s| s.0.k)
}

/// Number of full-dimensional cells.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_subdivision_num_cells(cfg: *const HsConfig, sub: *const HsSubdivision, out: *mut usize) -> HsStatus {
    guard(|| {
        let cfg = &ref_arg(cfg)?.0;
        let sub = &ref_arg(sub)?.0;
        *out_arg(out)? = sub.maximal_cells(cfg).len();
        Ok(())
    })
}

/// Writes the subdivision as a newly allocated JSON string, released with
/// [`hs_string_free`].
///
/// # Safety
/// `sub` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_subdivision_to_json(sub: *const HsSubdivision, out: *mut *mut c_char) -> HsStatus {
    guard(|| {
        let sub = &ref_arg(sub)?.0;
        let out = out_arg(out)?;
        *out = ptr::null_mut();
        let s = serde_json::to_string(&sub.to_json()).map_err(|_| HsStatus::Internal)?;
        *out = CString::new(s).map_err(|_| HsStatus::Internal)?.into_raw();
        Ok(())
    })
}

/// Coherence verdict of a validated subdivision.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_is_coherent(cfg: *const HsConfig, sub: *const HsSubdivision, out: *mut bool) -> HsStatus {
    guard(|| {
        let cfg = &ref_arg(cfg)?.0;
        let sub = &ref_arg(sub)?.0;
        let out = out_arg(out)?;
        *out = core(is_coherent(cfg, sub))?.is_coherent();
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
