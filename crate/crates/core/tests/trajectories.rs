use growthcast_core::{
    implicit_constant, implicit_time_of_size, solve_size_ode, time_saturation_integral, GrowthModel,
    LinearRateParams, RateDomain, SaturationRateParams, Trajectory,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn table2_time() -> SaturationRateParams {
    SaturationRateParams::new(3.940e1, 3.787e42, 4.836e-2, RateDomain::Time).unwrap()
}

fn table2_size() -> SaturationRateParams {
    SaturationRateParams::new(3.805e1, 5.124e1, 7.927e-2, RateDomain::Size).unwrap()
}

fn t2() -> LinearRateParams {
    LinearRateParams::new(3.895e-1, -1.805e-4, RateDomain::Time).unwrap()
}

fn t3() -> LinearRateParams {
    LinearRateParams::new(3.539e-2, -1.641e-4, RateDomain::Size).unwrap()
}

/// Centred difference of ln S compared with the generating rate on 100
/// points between 1960 and 2300.
fn check_rate_consistency(traj: &Trajectory, start: f64, end: f64) {
    let h = 1e-3;
    for k in 0..100 {
        let t = start + (end - start) * f64::from(k) / 99.0;
        let fd = (traj.ln_gdp(t + h).unwrap() - traj.ln_gdp(t - h).unwrap()) / (2.0 * h);
        let model = traj.rate(t).unwrap();
        assert!(
            ((fd - model) / model).abs() < 1e-6,
            "{:?} t={t}: fd={fd} model={model}",
            traj.kind()
        );
    }
}

#[test]
fn log_derivative_matches_rate_model() {
    let anchor = |m| Trajectory::anchored(m, 2014.0, 58.0).unwrap();
    check_rate_consistency(&anchor(GrowthModel::TimeSaturation(table2_time())), 1960.0, 2300.0);
    check_rate_consistency(&anchor(GrowthModel::LinearTime(t2())), 1960.0, 2300.0);
    check_rate_consistency(&anchor(GrowthModel::LinearSize(t3())), 1960.0, 2300.0);
    check_rate_consistency(&anchor(GrowthModel::Exponential { a: 39.4 }), 1960.0, 2300.0);
    check_rate_consistency(&anchor(GrowthModel::SizeSaturation(table2_size())), 1960.0, 2300.0);
}

/// Adaptive Simpson quadrature; independent of the closed forms.
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[test]
fn quadrature_matches_closed_form_integral() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let a: f64 = rng.gen_range(5.0..80.0);
        let r: f64 = rng.gen_range(0.005..0.2);
        let ln_b: f64 = rng.gen_range(-5.0..120.0);
        let p = SaturationRateParams::from_ln_b(a, ln_b, r, RateDomain::Time).unwrap();
        let t_min = (ln_b - a.ln()) / r;
        let t1 = t_min + rng.gen_range(0.5..40.0);
        let t2 = t1 + rng.gen_range(1.0..300.0);

        let integrand = |t: f64| 1.0 / p.denominator(t);
        let numeric = simpson(&integrand, t1, t2, 1e-13 * (t2 - t1));
        let closed = time_saturation_integral(&p, t2).unwrap() - time_saturation_integral(&p, t1).unwrap();
        assert!(
            ((numeric - closed) / closed).abs() < 1e-8,
            "a={a} ln_b={ln_b} r={r} [{t1}, {t2}]: {numeric} vs {closed}"
        );
    }
}

#[test]
fn rk4_and_implicit_series_agree() {
    let p = table2_size();
    let sol = solve_size_ode(&p, 58.0, 2014.0, 2200.0, 0.25).unwrap();
    let c = implicit_constant(&p, 2014.0, 58.0).unwrap();
    let mut checked = 0;
    for &(t, s) in &sol.points {
        if p.r() * s >= 20.0 {
            break;
        }
        let t_implicit = implicit_time_of_size(&p, c, s).unwrap();
        assert!((t_implicit - t).abs() < 1e-6, "t={t} S={s}: {t_implicit}");
        checked += 1;
    }
    assert!(checked > 30, "only {checked} overlap points");
}

#[test]
fn t1_merges_into_asymptotic_exponential() {
    let p = table2_time();
    let t1 = Trajectory::anchored(GrowthModel::TimeSaturation(p), 2014.0, 58.0).unwrap();
    // Same C convention: the ln a/(ra) offset moves into the asymptote.
    let c = t1.ln_constant().unwrap() + p.a().ln() / (p.r() * p.a());
    let asym = Trajectory::from_constant(GrowthModel::Exponential { a: p.a() }, c.exp()).unwrap();
    let t_min = p.lower_bound().unwrap();
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        let t = t_min + 1.0 + f64::from(k) * 10.0;
        let gap = (t1.ln_gdp(t).unwrap() - asym.ln_gdp(t).unwrap()).abs();
        // Below ~1e-10 the gap is round-off of two ln S values near 30.
        if prev > 1e-10 {
            assert!(gap < prev, "not decreasing at {t}");
        }
        prev = gap;
    }
    let gap = (t1.ln_gdp(t_min + 2000.0).unwrap() - asym.ln_gdp(t_min + 2000.0).unwrap()).abs();
    assert!(gap < 1e-6, "{gap}");
}

#[test]
fn asymptote_helpers_match_their_limits() {
    let t1 = Trajectory::anchored(GrowthModel::TimeSaturation(table2_time()), 2014.0, 58.0).unwrap();
    let asym = t1.asymptote().unwrap();
    let c = t1.ln_constant().unwrap() + table2_time().a().ln() / (table2_time().r() * table2_time().a());
    assert!((asym.ln_constant().unwrap() - c).abs() < 1e-9);
    assert!((t1.ln_gdp(2600.0).unwrap() - asym.ln_gdp(2600.0).unwrap()).abs() < 1e-9);

    let size = Trajectory::anchored(GrowthModel::SizeSaturation(table2_size()), 2014.0, 58.0).unwrap();
    let asym = size.asymptote().unwrap();
    assert_eq!(asym.rate(2014.0).unwrap(), 1.0 / table2_size().a());
    // By 2400 r S is far past 30 and the remaining gap is below the RK4 error.
    let gap = size.ln_gdp(2400.0).unwrap() - asym.ln_gdp(2400.0).unwrap();
    assert!(gap.abs() < 1e-7, "{gap}");
    assert!(size.ln_gdp(2014.0).unwrap() < asym.ln_gdp(2014.0).unwrap());

    assert!(Trajectory::anchored(GrowthModel::LinearTime(t2()), 2014.0, 58.0).unwrap().asymptote().is_err());
}

proptest! {
    #[test]
    fn t3_increasing_and_bounded(a in 0.005f64..0.1, limit in 50.0f64..500.0, frac in 0.05f64..0.95, t in 1900.0f64..2500.0) {
        let p = LinearRateParams::new(a, -a / limit, RateDomain::Size).unwrap();
        let traj = Trajectory::anchored(GrowthModel::LinearSize(p), 2000.0, frac * limit).unwrap();
        prop_assert!(traj.constant().unwrap() > 0.0);
        let s = traj.gdp(t).unwrap();
        let next = traj.gdp(t + 1.0).unwrap();
        prop_assert!(s < limit || (limit - s) / limit < 1e-14);
        if limit - next > 1e-9 * limit {
            prop_assert!(next > s);
        } else {
            prop_assert!(next >= s);
        }
    }

    #[test]
    fn t2_rises_then_falls(a in 0.1f64..1.0, t_max in 2020.0f64..2300.0, dt in 0.5f64..150.0) {
        let p = LinearRateParams::new(a, -a / t_max, RateDomain::Time).unwrap();
        let traj = Trajectory::anchored(GrowthModel::LinearTime(p), 2014.0, 58.0).unwrap();
        let peak = traj.ln_gdp(t_max).unwrap();
        prop_assert!(traj.ln_gdp(t_max - dt).unwrap() < peak);
        prop_assert!(traj.ln_gdp(t_max + dt).unwrap() < peak);
        prop_assert!(traj.ln_gdp(t_max - dt - 0.5).unwrap() < traj.ln_gdp(t_max - dt).unwrap());
        prop_assert!(traj.ln_gdp(t_max + dt + 0.5).unwrap() < traj.ln_gdp(t_max + dt).unwrap());
    }

    #[test]
    fn time_saturation_rate_decreases_to_inverse_a(a in 5.0f64..80.0, ln_b in 0.0f64..110.0, r in 0.01f64..0.2, off in 0.01f64..500.0) {
        let p = SaturationRateParams::from_ln_b(a, ln_b, r, RateDomain::Time).unwrap();
        let t = p.lower_bound().unwrap() + off;
        let here = p.rate_at(t).unwrap();
        let later = p.rate_at(t + 1.0).unwrap();
        if p.decay(t + 1.0) > 1e-10 * a {
            prop_assert!(later < here);
            prop_assert!(later > 1.0 / a);
        } else {
            prop_assert!(later <= here && later >= 1.0 / a);
        }
        let far = p.rate_at(p.lower_bound().unwrap() + 1e4).unwrap();
        prop_assert!((far - 1.0 / a).abs() <= 1e-12 / a);
    }

    #[test]
    fn size_saturation_rate_decreases(a in 5.0f64..80.0, b in 0.1f64..200.0, r in 0.01f64..0.2, s in 0.1f64..500.0) {
        let p = SaturationRateParams::new(a, b, r, RateDomain::Size).unwrap();
        prop_assume!(p.denominator(s) > 0.0);
        let here = p.rate_at(s).unwrap();
        let later = p.rate_at(s * 1.01).unwrap();
        if p.decay(s * 1.01) > 1e-10 * a {
            prop_assert!(later < here);
            prop_assert!(later > 1.0 / a);
        } else {
            prop_assert!(later <= here && later >= 1.0 / a);
        }
    }

    #[test]
    fn linear_rate_vanishes_at_its_root(a in 0.001f64..1.0, b in 1e-6f64..1e-2) {
        let p = LinearRateParams::new(a, -b, RateDomain::Time).unwrap();
        let root = p.zero_crossing().unwrap();
        prop_assert!(p.rate_at(root).abs() <= 4.0 * f64::EPSILON * a);
    }
}
