//! C ABI over `edlab`.
//!
//! Profiles and instances are opaque heap handles owned by the caller and
//! released with the matching `_free`. Every fallible call returns an
//! [`EdlStatus`]; outputs go through pointers and are written only on
//! `EDL_STATUS_OK`. Panics never cross the boundary.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use edlab::algorithms::Algorithm;
use edlab::{realize_instance, ClusterProfile, CountingOracle, Error, Instance, Outcome};

/// Opaque cluster profile.
pub struct EdlProfile(ClusterProfile);

/// Opaque input instance.
pub struct EdlInstance(Instance);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidProfile = 3,
    ProfileMismatch = 4,
    NotFound = 5,
    Internal = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdlAlgo {
    /// Block Sorting; `param` is the block size k.
    Block = 0,
    /// Median Recursion; `param` is L.
    Median = 1,
    /// Needs a profile.
    Clairvoyant = 2,
    /// Needs a profile.
    Preprocessed = 3,
    Oblivious = 4,
    Doubling = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdlOutcome {
    Duplicate = 0,
    Distinct = 1,
    GaveUp = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdlRunReport {
    pub outcome: EdlOutcome,
    pub comparisons: u64,
    /// Valid only for `EDL_OUTCOME_DUPLICATE`.
    pub witness_x: usize,
    pub witness_y: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdlBounds {
    pub median: f64,
    pub block: f64,
    pub combined: f64,
}

impl From<&Error> for EdlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidProfile(_) | Error::TooFewClusters => EdlStatus::InvalidProfile,
            Error::ProfileMismatch => EdlStatus::ProfileMismatch,
            Error::NoValidL1 => EdlStatus::NotFound,
            Error::IndexOutOfRange { .. } | Error::SelfComparison(_) | Error::Usage(_) => EdlStatus::InvalidArgument,
            _ => EdlStatus::Internal,
        }
    }
}

fn guard(f: impl FnOnce() -> Result<(), EdlStatus>) -> EdlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EdlStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => EdlStatus::Panic,
    }
}

unsafe fn slice<'a, T>(data: *const T, len: usize) -> Result<&'a [T], EdlStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(EdlStatus::NullPointer);
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), EdlStatus> {
    if out.is_null() {
        return Err(EdlStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn non_null<A, B>(a: *mut A, b: *mut B) -> Result<(), EdlStatus> {
    if a.is_null() || b.is_null() {
        Err(EdlStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn get<'a, T>(handle: *const T) -> Result<&'a T, EdlStatus> {
    handle.as_ref().ok_or(EdlStatus::NullPointer)
}

/// Static, NUL-terminated description of a status.
#[no_mangle]
pub extern "C" fn edl_status_message(status: EdlStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        EdlStatus::Ok => b"ok\0",
        EdlStatus::NullPointer => b"null pointer argument\0",
        EdlStatus::InvalidArgument => b"invalid argument\0",
        EdlStatus::InvalidProfile => b"invalid profile\0",
        EdlStatus::ProfileMismatch => b"profile does not match the instance\0",
        EdlStatus::NotFound => b"no valid parameter exists\0",
        EdlStatus::Internal => b"internal error\0",
        EdlStatus::Panic => b"panic caught at the boundary\0",
    };
    s.as_ptr().cast()
}

/// Builds a profile from `len` positive cluster sizes.
///
/// # Safety
/// `sizes` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_new(sizes: *const usize, len: usize, out: *mut *mut EdlProfile) -> EdlStatus {
    guard(|| {
        let sizes = slice(sizes, len)?.to_vec();
        let p = ClusterProfile::new(sizes).map_err(|e| EdlStatus::from(&e))?;
        write(out, Box::into_raw(Box::new(EdlProfile(p))))
    })
}

/// # Safety
/// `profile` must come from `edl_profile_new` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_free(profile: *mut EdlProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `profile` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_n(profile: *const EdlProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.0.n())
}

/// Number of clusters; 0 for a null handle.
///
/// # Safety
/// `profile` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_m(profile: *const EdlProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.0.m())
}

/// `C(L)` and `D(L)`.
///
/// # Safety
/// `profile` must be a live handle; `c` and `d` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_cd(
    profile: *const EdlProfile,
    l: usize,
    c: *mut usize,
    d: *mut usize,
) -> EdlStatus {
    guard(|| {
        non_null(c, d)?;
        let (cv, dv) = get(profile)?.0.cd(l).map_err(|e| EdlStatus::from(&e))?;
        write(c, cv)?;
        write(d, dv)
    })
}

/// The median-recursion parameter and its bound; `EDL_STATUS_NOT_FOUND`
/// when no `L >= 2` has `C(L) < n`.
///
/// # Safety
/// `profile` must be a live handle; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_select_l1(
    profile: *const EdlProfile,
    l: *mut usize,
    bound: *mut f64,
) -> EdlStatus {
    guard(|| {
        non_null(l, bound)?;
        let (lv, b) = get(profile)?.0.select_l1().map_err(|e| EdlStatus::from(&e))?;
        write(l, lv)?;
        write(bound, b)
    })
}

/// The block-sorting parameter and its objective.
///
/// # Safety
/// `profile` must be a live handle; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_select_l2(
    profile: *const EdlProfile,
    l: *mut usize,
    bound: *mut f64,
) -> EdlStatus {
    guard(|| {
        non_null(l, bound)?;
        let (lv, b) = get(profile)?.0.select_l2();
        write(l, lv)?;
        write(bound, b)
    })
}

/// # Safety
/// `profile` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_bounds(profile: *const EdlProfile, out: *mut EdlBounds) -> EdlStatus {
    guard(|| {
        let b = get(profile)?.0.bounds();
        write(
            out,
            EdlBounds {
                median: b.median,
                block: b.block,
                combined: b.combined,
            },
        )
    })
}

/// Writes 1 or 0 to `holds`; `EDL_STATUS_INVALID_PROFILE` for a single cluster.
///
/// # Safety
/// `profile` must be a live handle; `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_profile_check_linear_subset(profile: *const EdlProfile, holds: *mut i32) -> EdlStatus {
    guard(|| {
        let ok = get(profile)?.0.check_linear_subset().map_err(|e| EdlStatus::from(&e))?;
        write(holds, i32::from(ok))
    })
}

/// An instance from `len` ranks; equal ranks are equal elements.
///
/// # Safety
/// `ranks` must point to `len` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_instance_from_ranks(
    ranks: *const u64,
    len: usize,
    out: *mut *mut EdlInstance,
) -> EdlStatus {
    guard(|| {
        let ranks = slice(ranks, len)?;
        let inst = Instance::from_ranks(ranks.iter().copied()).map_err(|e| EdlStatus::from(&e))?;
        write(out, Box::into_raw(Box::new(EdlInstance(inst))))
    })
}

/// A seed-determined instance whose duplicate graph realizes `profile`.
///
/// # Safety
/// `profile` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_instance_realize(
    profile: *const EdlProfile,
    seed: u64,
    out: *mut *mut EdlInstance,
) -> EdlStatus {
    guard(|| {
        let inst = realize_instance(&get(profile)?.0, seed);
        write(out, Box::into_raw(Box::new(EdlInstance(inst))))
    })
}

/// # Safety
/// `instance` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn edl_instance_free(instance: *mut EdlInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn edl_instance_len(instance: *const EdlInstance) -> usize {
    instance.as_ref().map_or(0, |i| i.0.len())
}

/// Rank of element `index`. Intended for inspection, not for algorithms.
///
/// # Safety
/// `instance` must be a live handle; `rank` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_instance_rank(instance: *const EdlInstance, index: usize, rank: *mut u64) -> EdlStatus {
    guard(|| {
        let inst = &get(instance)?.0;
        if index >= inst.len() {
            return Err(EdlStatus::InvalidArgument);
        }
        write(rank, inst.values()[index].rank())
    })
}

/// Writes 1 when the instance's duplicate graph is isomorphic to `profile`.
///
/// # Safety
/// Both handles must be live; `matches` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_instance_verify(
    instance: *const EdlInstance,
    profile: *const EdlProfile,
    matches: *mut i32,
) -> EdlStatus {
    guard(|| {
        let ok = get(instance)?.0.verify_graph(&get(profile)?.0);
        write(matches, i32::from(ok))
    })
}

/// Runs one algorithm on `instance`. `param` is k for Block and L for
/// Median and ignored otherwise; `profile` is required for Clairvoyant and
/// Preprocessed and ignored otherwise.
///
/// # Safety
/// `instance` must be a live handle; `profile` null or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn edl_run(
    instance: *const EdlInstance,
    algo: EdlAlgo,
    param: usize,
    profile: *const EdlProfile,
    out: *mut EdlRunReport,
) -> EdlStatus {
    guard(|| {
        let inst = &get(instance)?.0;
        let need = || get(profile).map(|p| p.0.clone());
        let alg = match algo {
            EdlAlgo::Block => Algorithm::Block { k: param },
            EdlAlgo::Median => Algorithm::Median { l: param },
            EdlAlgo::Clairvoyant => Algorithm::Clairvoyant(need()?),
            EdlAlgo::Preprocessed => Algorithm::Preprocessed(need()?),
            EdlAlgo::Oblivious => Algorithm::Oblivious,
            EdlAlgo::Doubling => Algorithm::Doubling,
        };
        let report = alg
            .run(&mut CountingOracle::new(inst))
            .map_err(|e| EdlStatus::from(&e))?;
        let (outcome, (x, y)) = match report.outcome {
            Outcome::Duplicate(x, y) => (EdlOutcome::Duplicate, (x, y)),
            Outcome::Distinct => (EdlOutcome::Distinct, (0, 0)),
            Outcome::GaveUp => (EdlOutcome::GaveUp, (0, 0)),
        };
        write(
            out,
            EdlRunReport {
                outcome,
                comparisons: report.comparisons,
                witness_x: x,
                witness_y: y,
            },
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    #[test]
    fn every_status_has_a_message() {
        for s in [
            EdlStatus::Ok,
            EdlStatus::NullPointer,
            EdlStatus::InvalidArgument,
            EdlStatus::InvalidProfile,
            EdlStatus::ProfileMismatch,
            EdlStatus::NotFound,
            EdlStatus::Internal,
            EdlStatus::Panic,
        ] {
            let msg = unsafe { CStr::from_ptr(edl_status_message(s)) };
            assert!(!msg.to_bytes().is_empty());
        }
    }

    #[test]
    fn null_outputs_are_rejected() {
        let sizes = [2usize, 1];
        let status = unsafe { edl_profile_new(sizes.as_ptr(), 2, ptr::null_mut()) };
        assert_eq!(status, EdlStatus::NullPointer);
    }
}
