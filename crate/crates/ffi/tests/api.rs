use std::ptr;

use edlab_ffi::*;

fn profile(sizes: &[usize]) -> *mut EdlProfile {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { edl_profile_new(sizes.as_ptr(), sizes.len(), &mut p) },
        EdlStatus::Ok
    );
    p
}

fn instance(ranks: &[u64]) -> *mut EdlInstance {
    let mut i = ptr::null_mut();
    assert_eq!(
        unsafe { edl_instance_from_ranks(ranks.as_ptr(), ranks.len(), &mut i) },
        EdlStatus::Ok
    );
    i
}

fn run(inst: *const EdlInstance, algo: EdlAlgo, param: usize, prof: *const EdlProfile) -> (EdlStatus, EdlRunReport) {
    let mut r = EdlRunReport {
        outcome: EdlOutcome::GaveUp,
        comparisons: 0,
        witness_x: 0,
        witness_y: 0,
    };
    let s = unsafe { edl_run(inst, algo, param, prof, &mut r) };
    (s, r)
}

#[test]
fn profile_queries() {
    let p = profile(&[6]);
    unsafe {
        assert_eq!((edl_profile_n(p), edl_profile_m(p)), (6, 1));
        let (mut c, mut d) = (0, 0);
        assert_eq!(edl_profile_cd(p, 7, &mut c, &mut d), EdlStatus::Ok);
        assert_eq!((c, d), (6, 0));
        let (mut l, mut b) = (0, 0.0);
        assert_eq!(edl_profile_select_l1(p, &mut l, &mut b), EdlStatus::Ok);
        assert_eq!((l, b), (2, 6.0));
        let mut holds = -1;
        assert_eq!(
            edl_profile_check_linear_subset(p, &mut holds),
            EdlStatus::InvalidProfile
        );
        assert_eq!(holds, -1);
        edl_profile_free(p);
    }
}

#[test]
fn no_valid_l1_is_not_found() {
    let p = profile(&[1, 1, 1, 1]);
    let (mut l, mut b) = (0, 0.0);
    assert_eq!(unsafe { edl_profile_select_l1(p, &mut l, &mut b) }, EdlStatus::NotFound);
    let mut bounds = EdlBounds {
        median: -1.0,
        block: -1.0,
        combined: -1.0,
    };
    assert_eq!(unsafe { edl_profile_bounds(p, &mut bounds) }, EdlStatus::Ok);
    assert_eq!(bounds.median, 0.0);
    unsafe { edl_profile_free(p) };
}

#[test]
fn invalid_profiles() {
    let mut p = ptr::null_mut();
    let zero = [2usize, 0];
    assert_eq!(
        unsafe { edl_profile_new(zero.as_ptr(), 2, &mut p) },
        EdlStatus::InvalidProfile
    );
    assert!(p.is_null());
    assert_eq!(
        unsafe { edl_profile_new(ptr::null(), 3, &mut p) },
        EdlStatus::NullPointer
    );
}

#[test]
fn realize_verify_and_run_everything() {
    let p = profile(&[3, 2, 1, 1, 1, 1, 1, 1]);
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { edl_instance_realize(p, 7, &mut inst) }, EdlStatus::Ok);
    let mut matches = 0;
    assert_eq!(unsafe { edl_instance_verify(inst, p, &mut matches) }, EdlStatus::Ok);
    assert_eq!(matches, 1);
    assert_eq!(unsafe { edl_instance_len(inst) }, 11);
    for (algo, param) in [
        (EdlAlgo::Block, 4),
        (EdlAlgo::Median, 2),
        (EdlAlgo::Clairvoyant, 0),
        (EdlAlgo::Preprocessed, 0),
        (EdlAlgo::Oblivious, 0),
        (EdlAlgo::Doubling, 0),
    ] {
        let (s, r) = run(inst, algo, param, p);
        assert_eq!(s, EdlStatus::Ok, "{algo:?}");
        assert_eq!(r.outcome, EdlOutcome::Duplicate, "{algo:?}");
        let (mut a, mut b) = (0, 1);
        unsafe {
            assert_eq!(edl_instance_rank(inst, r.witness_x, &mut a), EdlStatus::Ok);
            assert_eq!(edl_instance_rank(inst, r.witness_y, &mut b), EdlStatus::Ok);
        }
        assert_eq!(a, b);
        assert!(r.comparisons > 0);
    }
    unsafe {
        edl_instance_free(inst);
        edl_profile_free(p);
    }
}

#[test]
fn run_errors() {
    let inst = instance(&[1, 2, 3, 4]);
    assert_eq!(run(inst, EdlAlgo::Block, 0, ptr::null()).0, EdlStatus::InvalidArgument);
    assert_eq!(
        run(inst, EdlAlgo::Clairvoyant, 0, ptr::null()).0,
        EdlStatus::NullPointer
    );
    let wrong = profile(&[2, 2]);
    assert_eq!(run(inst, EdlAlgo::Clairvoyant, 0, wrong).0, EdlStatus::ProfileMismatch);
    assert_eq!(
        run(ptr::null(), EdlAlgo::Doubling, 0, ptr::null()).0,
        EdlStatus::NullPointer
    );
    let (s, r) = run(inst, EdlAlgo::Doubling, 0, ptr::null());
    assert_eq!((s, r.outcome), (EdlStatus::Ok, EdlOutcome::Distinct));
    let mut rank = 0;
    assert_eq!(
        unsafe { edl_instance_rank(inst, 4, &mut rank) },
        EdlStatus::InvalidArgument
    );
    unsafe {
        edl_instance_free(inst);
        edl_profile_free(wrong);
        edl_instance_free(ptr::null_mut());
        edl_profile_free(ptr::null_mut());
    }
}

#[test]
fn outputs_untouched_on_error() {
    let p = profile(&[3, 1]);
    let mut c = 99usize;
    assert_eq!(
        unsafe { edl_profile_cd(p, 2, &mut c, ptr::null_mut()) },
        EdlStatus::NullPointer
    );
    assert_eq!(c, 99);
    let mut l = 99usize;
    assert_eq!(
        unsafe { edl_profile_select_l2(p, &mut l, ptr::null_mut()) },
        EdlStatus::NullPointer
    );
    assert_eq!(l, 99);
    unsafe { edl_profile_free(p) };
}
