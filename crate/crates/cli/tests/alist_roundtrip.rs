use proptest::prelude::*;
use qhgp_cli::alist::{emit_alist, parse_alist};
use qhgp_core::gf2::{BinaryMatrix, BinaryVector};

fn matrix() -> impl Strategy<Value = BinaryMatrix> {
    (0usize..=12, 0usize..=80, 0.0f64..1.0).prop_flat_map(|(r, c, p)| {
        proptest::collection::vec(proptest::collection::vec(proptest::bool::weighted(p.max(0.01)), c), r).prop_map(
            move |rows| BinaryMatrix::from_rows(c, rows.iter().map(|b| BinaryVector::from_bools(b)).collect()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn emit_then_parse_is_identity(m in matrix()) {
        let text = emit_alist(&m);
        prop_assert_eq!(text.lines().count(), 4 + m.rows() + m.cols());
        prop_assert_eq!(parse_alist(&text).unwrap(), m);
    }

    #[test]
    fn every_strict_prefix_is_rejected(m in matrix(), cut in 0usize..1000) {
        let text = emit_alist(&m);
        let lines: Vec<&str> = text.lines().collect();
        let keep = cut % lines.len();
        let prefix: String = lines[..keep].iter().map(|l| format!("{l}\n")).collect();
        let err = parse_alist(&prefix).unwrap_err();
        prop_assert_eq!(err.line, keep + 1);
    }
}
