use rug::Rational;

use supercong::wz::{
    boundary_identity, check_boundary_grid, check_summand, check_telescoping, eval_f, eval_g, pair, PairId,
};

#[test]
fn telescoping_on_full_grid() {
    for id in PairId::ALL {
        let report = check_telescoping(pair(id), 40, 40).unwrap();
        assert_eq!(report.cells_checked, 41 * 40);
        assert!(report.pass(), "{id}: first violation {:?}", report.violations.first());
    }
}

#[test]
fn boundary_identity_everywhere_up_to_30() {
    for id in PairId::ALL {
        let report = check_boundary_grid(pair(id), 30, 30).unwrap();
        assert_eq!(report.cells_checked, 31 * 30);
        assert!(report.pass(), "{id}: {:?}", report.violations.first());
    }
}

#[test]
fn boundary_identity_direct_spot_checks() {
    // the direct evaluator, independent of the shared-table grid version
    for id in PairId::ALL {
        for (n, k) in [(0, 1), (3, 7), (7, 3), (12, 12), (24, 12)] {
            assert!(boundary_identity(pair(id), n, k).unwrap(), "{id} ({n}, {k})");
        }
    }
}

#[test]
fn zero_below_diagonal() {
    for id in [PairId::Guo64, PairId::Z20n3] {
        for n in 0..=40 {
            for k in n + 1..=40 {
                assert_eq!(eval_f(pair(id), n, k).unwrap(), 0, "{id} F({n},{k})");
                assert_eq!(eval_g(pair(id), n, k).unwrap(), 0, "{id} G({n},{k})");
            }
        }
    }
}

#[test]
fn g_vanishes_at_zero() {
    for id in PairId::ALL {
        for k in 1..=40 {
            assert_eq!(eval_g(pair(id), 0, k).unwrap(), Rational::new(), "{id} G(0,{k})");
        }
    }
}

#[test]
fn summand_linkage_to_60() {
    for id in PairId::ALL {
        let report = check_summand(pair(id), 60).unwrap();
        assert!(report.pass(), "{id}: {:?}", report.violations.first());
    }
}
