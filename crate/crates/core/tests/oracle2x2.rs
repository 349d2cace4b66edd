//! Independent 2x2 oracle: closed-form spectral calculus on symmetric
//! 2x2 matrices (quadratic formula + spectral projectors), sharing no
//! code with the Jacobi path. Used to pin down geodesics, distances and
//! eigenvalue maps on 2x2 instances.

use cartan_core::matrix::Matrix;
use cartan_core::spd::SpdMatrix;

/// Symmetric 2x2 matrix [[a, b], [b, c]].
#[derive(Debug, Clone, Copy)]
struct Sym2 {
    a: f64,
    b: f64,
    c: f64,
}

type Full2 = [[f64; 2]; 2];

impl Sym2 {
    /// Eigenvalues (hi, lo) by the quadratic formula.
    fn eigs(self) -> (f64, f64) {
        let tr = self.a + self.c;
        let disc = ((self.a - self.c).powi(2) + 4.0 * self.b * self.b).sqrt();
        (0.5 * (tr + disc), 0.5 * (tr - disc))
    }

    /// `f` applied in the eigenbasis via spectral projectors
    /// `P_hi = (M - lo I)/(hi - lo)`, `P_lo = I - P_hi`.
    fn apply(self, f: impl Fn(f64) -> f64) -> Sym2 {
        let (hi, lo) = self.eigs();
        let d = hi - lo;
        if d.abs() < 1e-14 * hi.abs().max(1.0) {
            let v = f(0.5 * (hi + lo));
            return Sym2 { a: v, b: 0.0, c: v };
        }
        let (fhi, flo) = (f(hi), f(lo));
        Sym2 {
            a: (fhi * (self.a - lo) + flo * (hi - self.a)) / d,
            b: self.b * (fhi - flo) / d,
            c: (fhi * (self.c - lo) + flo * (hi - self.c)) / d,
        }
    }

    fn full(self) -> Full2 {
        [[self.a, self.b], [self.b, self.c]]
    }
}

fn mul2(p: Full2, q: Full2) -> Full2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    out
}

fn sym_of(full: Full2) -> Sym2 {
    Sym2 {
        a: full[0][0],
        b: 0.5 * (full[0][1] + full[1][0]),
        c: full[1][1],
    }
}

/// `A^{-1/2} B A^{-1/2}` by the closed form.
fn whiten(a: Sym2, b: Sym2) -> Sym2 {
    let inv_rt = a.apply(|x| 1.0 / x.sqrt());
    sym_of(mul2(mul2(inv_rt.full(), b.full()), inv_rt.full()))
}

/// Oracle geodesic `A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`.
fn geodesic_oracle(a: Sym2, b: Sym2, t: f64) -> Sym2 {
    let rt = a.apply(f64::sqrt);
    let powered = whiten(a, b).apply(|x| x.powf(t));
    sym_of(mul2(mul2(rt.full(), powered.full()), rt.full()))
}

fn riemannian_oracle(a: Sym2, b: Sym2) -> f64 {
    let (hi, lo) = whiten(a, b).eigs();
    (hi.ln().powi(2) + lo.ln().powi(2)).sqrt()
}

fn thompson_oracle(a: Sym2, b: Sym2) -> f64 {
    let (hi, lo) = whiten(a, b).eigs();
    hi.ln().abs().max(lo.ln().abs())
}

fn to_spd(s: Sym2) -> SpdMatrix {
    SpdMatrix::new(Matrix::from_nested(&[&[s.a, s.b], &[s.b, s.c]]).unwrap()).unwrap()
}

/// A deterministic family of well-conditioned SPD 2x2 pairs.
fn test_pairs() -> Vec<(Sym2, Sym2)> {
    let mut pairs = vec![
        (
            Sym2 { a: 2.0, b: 1.0, c: 2.0 },
            Sym2 { a: 4.0, b: -1.0, c: 1.0 },
        ),
        (
            Sym2 { a: 1.0, b: 0.0, c: 4.0 },
            Sym2 { a: 9.0, b: 0.0, c: 1.0 },
        ),
        (
            Sym2 { a: 3.0, b: 0.8, c: 1.0 },
            Sym2 { a: 1.0, b: -0.4, c: 2.0 },
        ),
    ];
    // A deterministic sweep of rotated, scaled pairs.
    for k in 0..40 {
        let t = k as f64 * 0.37;
        let (s1, c1) = (t.sin(), t.cos());
        let a = Sym2 {
            a: 1.0 + 2.0 * c1 * c1 + 0.1,
            b: 1.2 * s1 * c1,
            c: 1.0 + 2.0 * s1 * s1 + 0.1,
        };
        let u = (k as f64 * 0.61).sin();
        let b = Sym2 {
            a: 2.5 + u,
            b: 0.9 * u,
            c: 1.5 - 0.8 * u,
        };
        pairs.push((a, b));
    }
    pairs
}

#[test]
fn geodesic_matches_independent_oracle() {
    for (a, b) in test_pairs() {
        let (sa, sb) = (to_spd(a), to_spd(b));
        for t in [0.25, 0.5, 0.75] {
            let lib = sa.geodesic(&sb, t).unwrap();
            let oracle = geodesic_oracle(a, b, t);
            let err = (lib.get(0, 0) - oracle.a).abs()
                + (lib.get(0, 1) - oracle.b).abs()
                + (lib.get(1, 1) - oracle.c).abs();
            assert!(err < 1e-10, "t = {t}: geodesic error {err}");
        }
    }
}

#[test]
fn distances_match_independent_oracle() {
    for (a, b) in test_pairs() {
        let (sa, sb) = (to_spd(a), to_spd(b));
        let delta = sa.riemannian_distance(&sb).unwrap();
        assert!((delta - riemannian_oracle(a, b)).abs() < 1e-11);
        let dt = sa.thompson_distance(&sb).unwrap();
        assert!((dt - thompson_oracle(a, b)).abs() < 1e-11);
    }
}

#[test]
fn eigenvalues_match_quadratic_formula() {
    for (a, _) in test_pairs() {
        let sa = to_spd(a);
        let ev = sa.eigenvalues().unwrap();
        let (hi, lo) = a.eigs();
        assert!((ev.get(0) - hi).abs() < 1e-12);
        assert!((ev.get(1) - lo).abs() < 1e-12);
    }
}

#[test]
fn two_atom_karcher_mean_matches_oracle_midpoint() {
    // The uniform two-atom barycenter is the geodesic midpoint; compare
    // against the oracle's closed form, bypassing the library geodesic.
    use cartan_core::barycenter::karcher_mean;
    use cartan_core::measure::DiscreteMeasure;

    for (a, b) in test_pairs() {
        let (sa, sb) = (to_spd(a), to_spd(b));
        let mu = DiscreteMeasure::uniform(vec![sa, sb]).unwrap();
        let mean = karcher_mean(&mu).unwrap().mean;
        let oracle = geodesic_oracle(a, b, 0.5);
        let err = (mean.get(0, 0) - oracle.a).abs()
            + (mean.get(0, 1) - oracle.b).abs()
            + (mean.get(1, 1) - oracle.c).abs();
        assert!(err < 1e-9, "midpoint error {err}");
    }
}

#[test]
fn matrix_functions_match_projector_form() {
    for (a, _) in test_pairs() {
        let sa = to_spd(a);
        let log_lib = sa.log().unwrap();
        let log_oracle = a.apply(f64::ln);
        assert!((log_lib.get(0, 0) - log_oracle.a).abs() < 1e-12);
        assert!((log_lib.get(0, 1) - log_oracle.b).abs() < 1e-12);
        assert!((log_lib.get(1, 1) - log_oracle.c).abs() < 1e-12);

        let inv_lib = sa.inverse().unwrap();
        let inv_oracle = a.apply(|x| 1.0 / x);
        assert!((inv_lib.get(0, 0) - inv_oracle.a).abs() < 1e-12);
        assert!((inv_lib.get(1, 1) - inv_oracle.c).abs() < 1e-12);
    }
}
