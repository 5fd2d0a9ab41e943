use proptest::prelude::*;

use magma_dual::{
    all_group_ops, are_compatible, automorphisms, classify_op, conjugate, count_ops, decode_op,
    dual_set, encode_op, group_ops_with_identity, hat_op, make_table, read_table, semigroups,
    write_table, CayleyTable, ClassFilter, DualMethod, Exec, LabelMap, OpCode, Permutation,
    ScanOptions,
};

fn table(n: usize) -> impl Strategy<Value = CayleyTable> {
    prop::collection::vec(0..n as u8, n * n)
        .prop_map(move |e| CayleyTable::from_entries(n, e).unwrap())
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_image(&v).unwrap())
}

fn all_tables(n: usize) -> impl Iterator<Item = CayleyTable> {
    let size = (n as u64).pow((n * n) as u32);
    (0..size).map(move |c| decode_op(OpCode::new(n, c).unwrap()))
}

proptest! {
    #[test]
    fn codes_round_trip_at_order_four(t in table(4)) {
        let code = encode_op(&t).unwrap();
        prop_assert!(code.value() < 1 << 32);
        prop_assert_eq!(OpCode::new(4, code.value()).unwrap(), code);
        prop_assert_eq!(decode_op(code), t.clone());
        let rows: Vec<Vec<usize>> = t.rows().map(|r| r.iter().map(|&v| v as usize).collect()).collect();
        prop_assert_eq!(make_table(4, &rows).unwrap(), t);
    }

    #[test]
    fn table_text_round_trips(t in table(4), shift in 0usize..3) {
        let labels = match shift {
            0 => LabelMap::letters(4),
            1 => LabelMap::indices(4),
            _ => LabelMap::new(["e", "x", "y", "xy"]).unwrap(),
        };
        let text = write_table(&t, &labels);
        let (back, back_labels) = read_table(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(&back_labels, &labels);
        prop_assert_eq!(write_table(&back, &back_labels), text);
    }

    #[test]
    fn compatibility_is_symmetric_and_conjugation_invariant(
        x in table(4), y in table(4), s in perm(4)
    ) {
        let xy = are_compatible(&x, &y).unwrap().compatible;
        prop_assert_eq!(xy, are_compatible(&y, &x).unwrap().compatible);
        let (xs, ys) = (conjugate(&x, &s).unwrap(), conjugate(&y, &s).unwrap());
        prop_assert_eq!(xy, are_compatible(&xs, &ys).unwrap().compatible);
    }

    #[test]
    fn conjugation_commutes_with_hat(x in table(3), y in table(3), s in perm(3), a in 0usize..3) {
        // σ is an isomorphism, so it carries ^a to ^σ(a)
        let lhs = conjugate(&hat_op(&x, a, &y).unwrap(), &s).unwrap();
        let rhs = hat_op(&conjugate(&x, &s).unwrap(), s.apply(a), &conjugate(&y, &s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classification_is_conjugation_invariant(t in table(4), s in perm(4)) {
        let a = classify_op(&t);
        let b = classify_op(&conjugate(&t, &s).unwrap());
        prop_assert_eq!((a.nd, a.sg, a.mn, a.gr), (b.nd, b.sg, b.mn, b.gr));
        prop_assert_eq!(automorphisms(&t).len(), automorphisms(&conjugate(&t, &s).unwrap()).len());
    }

    #[test]
    fn backtrack_members_are_compatible_at_order_four(t in table(4)) {
        let d = dual_set(&t, DualMethod::Backtrack).unwrap();
        for m in d.tables().take(32) {
            prop_assert!(are_compatible(&t, &m).unwrap().compatible);
        }
    }
}

#[test]
fn class_inclusions_hold_exhaustively() {
    for n in 1..=3 {
        for t in all_tables(n) {
            let r = classify_op(&t);
            assert!(!r.gr || r.mn, "{t:?}");
            assert!(!r.mn || r.sg, "{t:?}");
            assert!(!r.gr || r.nd, "{t:?}");
            assert_eq!(r.mn, r.sg && r.identity.is_some(), "{t:?}");
            assert_eq!(r.sg, r.assoc_counterexample.is_none(), "{t:?}");
            assert_eq!(r.nd, r.missing_image.is_none(), "{t:?}");
        }
    }
}

#[test]
fn filter_counts_are_monotone_and_add_up() {
    let opts = ScanOptions::with_exec(Exec::default());
    for n in 1..=3 {
        let count = |f| count_ops(n, f, &opts).unwrap().count;
        let (all, nd, sg, mn, gr) = (
            count(ClassFilter::All),
            count(ClassFilter::Nd),
            count(ClassFilter::Sg),
            count(ClassFilter::Mn),
            count(ClassFilter::Gr),
        );
        assert!(gr <= mn && mn <= sg && sg <= all && gr <= nd && nd <= all);
        assert_eq!(all, (n as u64).pow((n * n) as u32));
        let both = sg - count(ClassFilter::SgNotNd);
        assert_eq!(count(ClassFilter::NdNotSg) + both, nd, "n = {n}");
    }
}

#[test]
fn semigroup_counts_match_the_known_sequence() {
    // labelled semigroups of order n
    for (n, expected) in [(1, 1), (2, 8), (3, 113), (4, 3492)] {
        assert_eq!(semigroups(n).unwrap().len(), expected, "n = {n}");
    }
    let opts = ScanOptions::with_exec(Exec::default());
    assert_eq!(count_ops(4, ClassFilter::Sg, &opts).unwrap().count, 3492);
}

#[test]
fn group_counts_match_the_orbit_formula() {
    // labelled groups: sum over isomorphism types of n! / |Aut|
    for (n, expected) in [(1, 1), (2, 2), (3, 3), (4, 16), (5, 30), (6, 480)] {
        let all = all_group_ops(n).unwrap();
        assert_eq!(all.len(), expected, "n = {n}");
        for e in 0..n {
            assert_eq!(group_ops_with_identity(n, e).unwrap().len() * n, expected, "n = {n}");
        }
    }
}

#[test]
fn group_counts_agree_with_the_census() {
    let opts = ScanOptions::with_exec(Exec::default());
    for n in 1..=4 {
        let census = count_ops(n, ClassFilter::Gr, &opts).unwrap().count;
        let fixed = group_ops_with_identity(n, 0).unwrap().len() as u64;
        assert_eq!(census, n as u64 * fixed, "n = {n}");
    }
}

#[test]
fn parallel_and_sequential_duals_agree() {
    for code in (0..19683).step_by(97) {
        let t = OpCode::new(3, code).unwrap().decode();
        let cfg = |exec| magma_dual::DualConfig {
            exec,
            ..Default::default()
        };
        let a = magma_dual::dual_set_with(&t, DualMethod::Exhaustive, &cfg(Exec::Sequential)).unwrap();
        let b = magma_dual::dual_set_with(&t, DualMethod::Exhaustive, &cfg(Exec::with_workers(4))).unwrap();
        assert_eq!(a, b);
    }
}
