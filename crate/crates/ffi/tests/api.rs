use std::ffi::{CStr, CString};
use std::ptr;

use motifspectra_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ms_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn generate_cluster_and_score() {
    let mut g = ptr::null_mut();
    let mut truth = ptr::null_mut();
    let mut est = ptr::null_mut();
    let mut r = f64::NAN;
    unsafe {
        let s = ms_graph_generate(MsModel::Supsbm as u32, 60, 2, 30.0, 3.0, 2.0, 0.1, 4, &mut g, &mut truth);
        assert_eq!(s, MsStatus::Ok);
        assert_eq!(ms_graph_n(g), 60);
        assert!(ms_graph_edge_count(g) > 0 && ms_graph_hyperedge_count(g) > 0);
        let method = CString::new("hospA").unwrap();
        assert_eq!(ms_cluster(g, method.as_ptr(), 2, 1, &mut est), MsStatus::Ok);
        assert_eq!(ms_misclustering_rate(truth, est, &mut r), MsStatus::Ok);
        assert_eq!(ms_assignment_k(est), 2);
        ms_assignment_free(est);
        ms_assignment_free(truth);
        ms_graph_free(g);
    }
    assert_eq!(r, 0.0);
}

#[test]
fn graph_from_arrays_and_labels_roundtrip() {
    let edges = [0u32, 1, 1, 2, 1, 0];
    let tris = [0u32, 1, 2];
    let mut g = ptr::null_mut();
    let mut a = ptr::null_mut();
    let mut buf = [9u32; 4];
    unsafe {
        assert_eq!(ms_graph_new(4, edges.as_ptr(), 3, tris.as_ptr(), 1, &mut g), MsStatus::Ok);
        assert_eq!(ms_graph_edge_count(g), 2);
        assert_eq!(ms_graph_hyperedge_count(g), 1);
        let labels = [1u32, 0, 1, 0];
        assert_eq!(ms_assignment_new(labels.as_ptr(), 4, 2, &mut a), MsStatus::Ok);
        assert_eq!(ms_assignment_labels(a, buf.as_mut_ptr(), 3), MsStatus::DimensionMismatch);
        assert_eq!(ms_assignment_labels(a, buf.as_mut_ptr(), 4), MsStatus::Ok);
        ms_assignment_free(a);
        ms_graph_free(g);
    }
    assert_eq!(buf, [1, 0, 1, 0]);
}

#[test]
fn errors_carry_status_and_message() {
    let mut g = ptr::null_mut();
    let mut a = ptr::null_mut();
    let mut d = 0.0;
    unsafe {
        let self_loop = [2u32, 2];
        assert_eq!(ms_graph_new(3, self_loop.as_ptr(), 1, ptr::null(), 0, &mut g), MsStatus::InvalidInput);
        assert!(last_error().contains("self-loop"));
        assert!(g.is_null());

        assert_eq!(ms_graph_new(3, ptr::null(), 1, ptr::null(), 0, &mut g), MsStatus::NullPointer);
        assert_eq!(ms_graph_new(3, ptr::null(), 0, ptr::null(), 0, ptr::null_mut()), MsStatus::NullPointer);

        let s = ms_graph_generate(7, 10, 2, 1.0, 1.0, 0.0, 0.0, 0, &mut g, ptr::null_mut());
        assert_eq!(s, MsStatus::InvalidParams);
        assert!(last_error().contains("unknown model"));
        let s = ms_graph_generate(MsModel::Sbm as u32, 10, 3, 1.0, 1.0, 0.0, 0.0, 0, &mut g, ptr::null_mut());
        assert_eq!(s, MsStatus::InvalidParams);

        let labels = [0u32, 5];
        assert_eq!(ms_assignment_new(labels.as_ptr(), 2, 2, &mut a), MsStatus::InvalidInput);

        assert_eq!(ms_graph_new(3, ptr::null(), 0, ptr::null(), 0, &mut g), MsStatus::Ok);
        let bad = CString::new("nope").unwrap();
        assert_eq!(ms_cluster(g, bad.as_ptr(), 2, 0, &mut a), MsStatus::InvalidParams);
        assert_eq!(ms_estimate_delta(g, &mut d), MsStatus::UndefinedEstimate);
        ms_graph_free(g);

        ms_graph_free(ptr::null_mut());
        ms_assignment_free(ptr::null_mut());
        assert_eq!(ms_graph_n(ptr::null()), 0);
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(ms_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
