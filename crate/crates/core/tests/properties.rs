use std::f64::consts::PI;

use proptest::prelude::*;
use quadfact::kernels::{cot_chain_holds, simpson_alpha_beta, simpson_h, TrapezoidKernel};
use quadfact::rootfind::{hyperbolic_inequality_holds, trigonometric_inequality_holds};
use quadfact::{
    holder_bound, integrate_adaptive, tan_fixed_point, zeta_derivative, Atom, CharacteristicSpec64, Complex64,
    ExpPolynomial64, Exponent, Factorization64, Measure64, SimpsonParam64, SmoothFunction64, Term, ZetaParams64,
};

fn builtin() -> impl Strategy<Value = SmoothFunction64> {
    prop_oneof![
        (0usize..8).prop_map(SmoothFunction64::monomial),
        (-2.0..2.0f64).prop_map(SmoothFunction64::exp),
        (0.1..4.0f64).prop_map(SmoothFunction64::sin),
        (0.1..4.0f64).prop_map(SmoothFunction64::cos),
        prop::collection::vec(-2.0..2.0f64, 1..6).prop_map(SmoothFunction64::polynomial),
    ]
}

fn term() -> impl Strategy<Value = Term<f64>> {
    (-1.5..1.5f64, -3.0..3.0f64, 0usize..3, -1.0..1.0f64, -1.0..1.0f64)
        .prop_map(|(re, im, p, cr, ci)| Term::new(Complex64::new(re, im), p, Complex64::new(cr, ci)))
}

fn exp_poly(max_terms: usize) -> impl Strategy<Value = ExpPolynomial64> {
    prop::collection::vec(term(), 1..=max_terms).prop_map(ExpPolynomial64::new)
}

fn measure() -> impl Strategy<Value = Measure64> {
    (
        -2.0..2.0f64,
        0.2..3.0f64,
        prop::collection::vec((0.0..1.0f64, -2.0..2.0f64), 0..4),
        -2.0..2.0f64,
    )
        .prop_map(|(a, len, atoms, density)| {
            let b = a + len;
            let atoms = atoms.into_iter().map(|(s, w)| Atom { x: a + s * len, w }).collect();
            Measure64::new(a, b, atoms, density).unwrap()
        })
}

/// Conjugate-closed root sets on a half-integer lattice, total order `1..=max`.
fn real_spec(max: usize) -> impl Strategy<Value = CharacteristicSpec64> {
    (
        prop::collection::vec((-4i32..=4, 1usize..=2), 0..=max),
        prop::collection::vec((-3i32..=3, 1i32..=4), 0..=max / 2),
    )
        .prop_filter_map("order out of range", move |(reals, pairs)| {
            let mut roots: Vec<(Complex64, usize)> = Vec::new();
            for (re, m) in reals {
                let z = Complex64::new(re as f64 * 0.5, 0.0);
                if roots.iter().all(|(r, _)| *r != z) {
                    roots.push((z, m));
                }
            }
            for (re, im) in pairs {
                let z = Complex64::new(re as f64 * 0.5, im as f64 * 0.75);
                if roots.iter().all(|(r, _)| *r != z) {
                    roots.push((z, 1));
                    roots.push((z.conj(), 1));
                }
            }
            let order: usize = roots.iter().map(|r| r.1).sum();
            if order == 0 || order > max {
                return None;
            }
            CharacteristicSpec64::from_roots(roots).ok()
        })
}

fn simpson_param() -> impl Strategy<Value = SimpsonParam64> {
    (0.01..4.0f64, 0.01..3.1f64).prop_map(|(w, v)| SimpsonParam64::new(w, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn functional_is_linear(mu in measure(), f in builtin(), g in builtin(), c1 in -3.0..3.0f64, c2 in -3.0..3.0f64) {
        let combo = SmoothFunction64::combination(vec![(c1, f.clone()), (c2, g.clone())]);
        let lhs = mu.apply_functional(&combo).unwrap();
        let (af, ag) = (mu.apply_functional(&f).unwrap(), mu.apply_functional(&g).unwrap());
        let rhs = c1 * af + c2 * ag;
        let scale = 1.0 + (c1 * af).abs() + (c2 * ag).abs();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn spectral_derivative_matches_central_difference(mu in measure(), re in -2.0..2.0f64, im in -4.0..4.0f64, j in 0usize..4) {
        let lam = Complex64::new(re, im);
        let h = 1e-5;
        let up = mu.spectral_derivative(lam + h, j);
        let down = mu.spectral_derivative(lam - h, j);
        let fd = (up - down) / (2.0 * h);
        let exact = mu.spectral_derivative(lam, j + 1);
        let scale = exact.norm().max(mu.spectral_derivative(lam, j).norm()).max(1e-3);
        prop_assert!((fd - exact).norm() <= 1e-6 * scale, "{fd} vs {exact}");
    }

    #[test]
    fn trapezoid_spectral_closed_form(a in -2.0..2.0f64, len in 0.1..3.0f64, re in -3.0..3.0f64, im in -6.0..6.0f64) {
        let b = a + len;
        let mu = Measure64::trapezoid(a, b).unwrap();
        let lam = Complex64::new(re, im);
        let got = mu.spectral(lam) * (-lam * (0.5 * (a + b))).exp();
        let x = lam * (0.5 * len);
        let sinhc = if x.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x.sinh() / x };
        let want = x.cosh() - sinhc;
        prop_assert!((got - want).norm() <= 1e-12 * (1.0 + want.norm()), "{got} vs {want}");
    }

    #[test]
    fn characteristic_solution_initial_values(spec in real_spec(6)) {
        let omega = spec.characteristic_solution().unwrap();
        let n = spec.order();
        for i in 0..n {
            let d = omega.eval_derivative(i, 0.0);
            let want = if i + 1 == n { 1.0 } else { 0.0 };
            prop_assert!((d - want).norm() <= 1e-11, "derivative {i}: {d}");
        }
    }

    #[test]
    fn operator_annihilates_characteristic_solution(spec in real_spec(6), t in -2.0..2.0f64) {
        let omega = spec.characteristic_solution().unwrap();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (i, c) in spec.coeffs().iter().enumerate() {
            let term = c * omega.eval_derivative(i, t);
            acc += term;
            scale += term.norm();
        }
        prop_assert!(acc.norm() <= 1e-10 * (1.0 + scale), "residual {acc} at scale {scale}");
    }

    #[test]
    fn characteristic_solution_is_real(spec in real_spec(6), t in -3.0..3.0f64) {
        let v = spec.characteristic_solution().unwrap().eval(t);
        prop_assert!(v.im.abs() <= 1e-11 * (1.0 + v.re.abs()), "{v}");
    }

    #[test]
    fn taylor_expansion_reconstructs(spec in real_spec(6), p in exp_poly(3), a in -1.0..1.0f64, x in -1.0..1.0f64) {
        let f = SmoothFunction64::exp_poly(p);
        let split = spec.taylor_expansion(&f, a, x).unwrap();
        let want = f.value(x).unwrap();
        prop_assert!((split.total() - want).abs() <= 1e-9 * (1.0 + want.abs()), "{} vs {want}", split.total());
    }

    #[test]
    fn zeta_integrated_ode(n in 1usize..7, kk in 0usize..6, gamma in -3.0..3.0f64, t in 0.0..3.0f64) {
        let k = kk % n;
        let params = ZetaParams64::new(n, k, gamma).unwrap();
        let top = zeta_derivative(&params, n, t).unwrap();
        let low = zeta_derivative(&params, k, t).unwrap();
        prop_assert!((top - gamma * low - 1.0).abs() <= 1e-11 * (1.0 + (gamma * low).abs()));
    }

    #[test]
    fn zeta_scaling(n in 1usize..6, kk in 0usize..5, gamma in 0.05..4.0f64, negative: bool, t in 0.0..3.0f64) {
        let k = kk % n;
        let m = (n - k) as f64;
        let sign = if negative { -1.0 } else { 1.0 };
        let lhs = ZetaParams64::new(n, k, sign * gamma).unwrap().eval(t).unwrap();
        let unit = ZetaParams64::new(n, k, sign).unwrap();
        let rhs = gamma.powf(-(n as f64) / m) * unit.eval(gamma.powf(1.0 / m) * t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1e-300 + rhs.abs().max(lhs.abs())), "{lhs} vs {rhs}");
    }

    #[test]
    fn tau_in_bracket(n in 1usize..500) {
        let tau: f64 = tan_fixed_point(n);
        prop_assert!(tau > n as f64 * PI && tau < (n as f64 + 0.5) * PI);
    }

    #[test]
    fn hyperbolic_and_trigonometric_inequalities(t in 1e-6..20.0f64, s in 1e-6..(PI - 1e-6)) {
        prop_assert!(hyperbolic_inequality_holds(t));
        prop_assert!(trigonometric_inequality_holds(s));
    }

    #[test]
    fn cot_chain(w in 0.01..6.0f64, v in 0.01..3.13f64, s in 0.001..0.999f64) {
        prop_assert!(cot_chain_holds(w, v, s));
    }

    #[test]
    fn simpson_weights_solve_defining_relation(u in simpson_param()) {
        let (alpha, beta) = simpson_alpha_beta(&u);
        let z = u.u();
        let lhs = z.cosh() * (2.0 * alpha) + beta;
        let rhs = z.sinh() / z;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()), "{lhs} vs {rhs}");
    }

    #[test]
    fn simpson_h_strictly_increasing(u in simpson_param()) {
        let hs: Vec<f64> = (0..=100).map(|i| simpson_h(&u, i as f64 / 100.0)).collect();
        prop_assert!(hs.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn simpson_kernel_shape(u in simpson_param(), a in -1.0..1.0f64, len in 0.2..3.0f64) {
        let b = a + len;
        let fact = Factorization64::simpson(a, b, u).unwrap();
        let gs: Vec<f64> = (0..=200).map(|i| fact.kernel(a + len * i as f64 / 200.0).unwrap()).collect();
        let peak = gs[100];
        let tol = 1e-10 * peak;
        prop_assert!(gs.iter().all(|&g| g >= -tol));
        prop_assert!(gs[..=100].windows(2).all(|p| p[1] >= p[0] - tol));
        prop_assert!(gs[100..].windows(2).all(|p| p[1] <= p[0] + tol));
        for i in 0..=100 {
            prop_assert!((gs[i] - gs[200 - i]).abs() <= 1e-10 * peak);
        }
    }

    #[test]
    fn trapezoid_kernel_nonnegative(a in -2.0..2.0f64, len in 0.1..3.0f64, s in 0.0..1.0f64) {
        let k = TrapezoidKernel::new(a, a + len, &[0]).unwrap();
        prop_assert!(k.eval(a + s * len) >= 0.0);
    }

    #[test]
    fn oracle_matches_antiderivative(p in exp_poly(4)) {
        let q = p.antiderivative();
        let want = q.eval(2.0) - q.eval(0.0);
        let re = integrate_adaptive(|t: f64| p.eval(t).re, 0.0, 2.0, 1e-14, &[]).unwrap().value;
        let im = integrate_adaptive(|t: f64| p.eval(t).im, 0.0, 2.0, 1e-14, &[]).unwrap().value;
        prop_assert!((re - want.re).abs() <= 1e-12 * (1.0 + want.re.abs()));
        prop_assert!((im - want.im).abs() <= 1e-12 * (1.0 + want.im.abs()));
    }

    #[test]
    fn reports_are_conjugate(n in 0usize..3, f in builtin(), pick in 0usize..3) {
        let p = [Exponent::One, Exponent::Two, Exponent::Inf][pick];
        let fact = Factorization64::trapezoid(0.0, 1.0, &[n]).unwrap();
        let report = holder_bound(&fact, &f, p).unwrap();
        prop_assert_eq!(report.p.reciprocal() + report.q.reciprocal(), 1.0);
        prop_assert_eq!(report.bound, report.derivative_norm * report.kernel_norm);
    }
}
