//! Sanity checks for the shipped data files.

use qldpc::alist::read_alist;
use qldpc::qc::QcMatrix;
use std::fs::File;
use std::path::PathBuf;

fn data(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(file)
}

#[test]
fn shipped_tanner_alist_is_the_155_64_code() {
    let h = read_alist(File::open(data("tanner_155_64.alist")).unwrap()).unwrap();
    assert_eq!((h.rows(), h.cols()), (93, 155));
    assert!((0..h.rows()).all(|r| h.row_weight(r) == 5));
    assert!((0..h.cols()).all(|c| h.col_weight(c) == 3));
    assert_eq!(h.cols() - h.rank(), 64);
}

#[test]
fn shipped_qc_weight_matrix_lifts_to_the_alist_matrix() {
    let w = QcMatrix::read_from(File::open(data("tanner_155_64.qc")).unwrap()).unwrap();
    assert_eq!((w.rows(), w.cols(), w.gamma()), (3, 5, 31));
    let h = read_alist(File::open(data("tanner_155_64.alist")).unwrap()).unwrap();
    assert_eq!(w.lift(), h);
}

#[test]
fn shipped_example_weights_parse() {
    let w1 = QcMatrix::read_from(File::open(data("ex2_w1.qc")).unwrap()).unwrap();
    let w2 = QcMatrix::read_from(File::open(data("ex2_w2.qc")).unwrap()).unwrap();
    assert_eq!(w1.gamma(), 2);
    assert!(w1.entry(0, 2).is_zero());
    assert!(w1.is_monomial() && w2.is_monomial());
    let code = qldpc::lifted_product(&w1, &w2).unwrap();
    assert_eq!(code.n(), 26);
}

#[test]
fn shipped_repetition_alist_matches_the_constructor() {
    let h = read_alist(File::open(data("rep2.alist")).unwrap()).unwrap();
    assert_eq!(h, qldpc::classical::repetition_code(2));
}
