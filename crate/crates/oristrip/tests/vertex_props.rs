//! Property tests for the single-vertex fold-angle relations.

use oristrip::geom::PI;
use oristrip::{
    ab_coefficients, closure_residual, fold_angles, folding_multiplier, is_singular, FoldMode,
    SectorAngles,
};
use proptest::prelude::*;

const SINGULAR_MARGIN: f64 = 1e-2;

fn modes() -> impl Strategy<Value = FoldMode> {
    prop_oneof![Just(FoldMode::Plus), Just(FoldMode::Minus)]
}

/// Sector angles a safe margin away from both singular loci, so multipliers
/// stay within a sane range for finite-difference work.
fn nonsingular_angles() -> impl Strategy<Value = (SectorAngles, FoldMode)> {
    (0.05..0.95f64, 0.05..0.95f64, modes())
        .prop_map(|(u, v, mode)| (SectorAngles::new(u * PI, v * PI).unwrap(), mode))
        .prop_filter("too close to a singular locus", |(angles, _)| {
            (angles.theta0() - angles.theta1()).abs() > SINGULAR_MARGIN
                && (angles.theta0() + angles.theta1() - PI).abs() > SINGULAR_MARGIN
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// fold_angles is odd in the input angle, component by component.
    #[test]
    fn odd_symmetry((angles, mode) in nonsingular_angles(), frac in -0.999..0.999f64) {
        let rho0 = frac * PI;
        let plus = fold_angles(&angles, mode, rho0).unwrap();
        let minus = fold_angles(&angles, mode, -rho0).unwrap();
        for i in 0..4 {
            prop_assert!((plus.rho[i] + minus.rho[i]).abs() < 1e-12);
        }
    }

    /// The cosine relation holds everywhere on the branch.
    #[test]
    fn cosine_relation((angles, mode) in nonsingular_angles(), frac in -1.0..1.0f64) {
        let rho0 = frac * PI;
        let st = fold_angles(&angles, mode, rho0).unwrap();
        let ab = ab_coefficients(&angles, mode);
        let expect = (ab.a * rho0.cos() + ab.b) / (ab.b * rho0.cos() + ab.a);
        prop_assert!((st.rho[1].cos() - expect).abs() < 1e-12);
    }

    /// tan^2(rho1/2) = p^2 tan^2(rho0/2).
    #[test]
    fn half_angle_multiplier((angles, mode) in nonsingular_angles(), frac in -0.95..0.95f64) {
        let rho0 = frac * PI;
        prop_assume!(rho0.abs() > 1e-3);
        let st = fold_angles(&angles, mode, rho0).unwrap();
        let p = folding_multiplier(&angles, mode).unwrap();
        let lhs = (st.rho[1] / 2.0).tan().powi(2);
        let rhs = p * p * (rho0 / 2.0).tan().powi(2);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1e-30), "{lhs} vs {rhs}");
    }

    /// Folding to the flat state locks the adjacent crease flat as well.
    #[test]
    fn endpoint_lock((angles, mode) in nonsingular_angles()) {
        let st = fold_angles(&angles, mode, PI).unwrap();
        prop_assert_eq!(st.rho[1].abs(), PI);
        let st = fold_angles(&angles, mode, -PI).unwrap();
        prop_assert_eq!(st.rho[1].abs(), PI);
    }

    /// Finite-difference slopes at the developed and flat states are
    /// reciprocal.
    #[test]
    fn reciprocal_slopes((angles, mode) in nonsingular_angles()) {
        let h = 1e-6;
        let f = |rho0: f64| fold_angles(&angles, mode, rho0).unwrap().rho[1];
        let slope0 = oristrip_testkit::central_slope(f, 0.0, h);
        let slope_pi = oristrip_testkit::backward_slope(f, PI, h);
        prop_assert!(
            (slope0.abs() * slope_pi.abs() - 1.0).abs() <= 1e-6,
            "product {}",
            slope0.abs() * slope_pi.abs()
        );
    }

    /// The closed form agrees with the independent loop-closure oracle.
    #[test]
    fn oracle_equivalence((angles, mode) in nonsingular_angles(), frac in -0.99..0.99f64) {
        let rho0 = frac * PI;
        prop_assume!(rho0.abs() > 1e-2);
        let st = fold_angles(&angles, mode, rho0).unwrap();
        let oracle = oristrip_testkit::solve_rho1(
            angles.theta0(),
            angles.theta1(),
            mode.sigma(),
            rho0,
        );
        prop_assert!((st.rho[1] - oracle).abs() < 1e-8, "{} vs {oracle}", st.rho[1]);
    }

    /// Every state produced by fold_angles closes the spatial loop.
    #[test]
    fn closure_of_closed_form((angles, mode) in nonsingular_angles(), frac in -1.0..1.0f64) {
        let st = fold_angles(&angles, mode, frac * PI).unwrap();
        prop_assert!(closure_residual(&angles, &st) < 1e-9);
    }
}

#[test]
fn quarter_turn_reference_value() {
    // The (120, 60) vertex driven to a right angle, frozen from the closure
    // search oracle (cos rho1 = -0.6 on this branch).
    let angles = SectorAngles::from_degrees(120.0, 60.0).unwrap();
    let st = fold_angles(&angles, FoldMode::Minus, PI / 2.0).unwrap();
    assert!(
        (st.rho[1] - 2.214297435588181).abs() < 1e-12,
        "{}",
        st.rho[1]
    );
    let oracle = oristrip_testkit::solve_rho1(angles.theta0(), angles.theta1(), -1.0, PI / 2.0);
    assert!((st.rho[1] - oracle).abs() < 1e-8);
    assert!((st.rho[1].cos() + 0.6).abs() < 1e-12);
}

#[test]
fn singular_inputs_error_instead_of_degrading() {
    let angles = SectorAngles::from_degrees(85.0, 85.0).unwrap();
    assert!(is_singular(&angles, FoldMode::Minus));
    assert!(fold_angles(&angles, FoldMode::Minus, 0.3).is_err());
    assert!(folding_multiplier(&angles, FoldMode::Minus).is_err());
    // The same pair in the other mode is fine.
    assert!(fold_angles(&angles, FoldMode::Plus, 0.3).is_ok());
}
