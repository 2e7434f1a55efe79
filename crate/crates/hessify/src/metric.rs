//! Analytic surface metrics as jets: nondegeneracy, inverse components,
//! Levi-Civita symbols, and Gauss curvature.
//!
//! A [`MetricJet`] holds the three independent components `g11, g12, g22`
//! of `g = g_ij(y) dy^i dy^j` as [`Jet2`] values around a base point. All
//! geometry happens in the coordinate coframe `dy^i`; frame freedom is the
//! business of the `eds` module.

use crate::error::{Error, Result};
use crate::jet::Jet2;

/// Sign pattern of the metric at the base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    /// (+,+)
    PositiveDefinite,
    /// (−,−)
    NegativeDefinite,
    /// (+,−)
    Indefinite,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Signature::PositiveDefinite => write!(f, "(+,+)"),
            Signature::NegativeDefinite => write!(f, "(-,-)"),
            Signature::Indefinite => write!(f, "(+,-)"),
        }
    }
}

/// A symmetric 2x2 matrix of jets around a base point.
#[derive(Debug, Clone)]
pub struct MetricJet {
    base_point: [f64; 2],
    order: usize,
    g11: Jet2,
    g12: Jet2,
    g22: Jet2,
}

/// Christoffel symbols Γ^i_{jk} of a metric, symmetric in the lower pair.
///
/// Stored as jets of order `N - 1`.
#[derive(Debug, Clone)]
pub struct ChristoffelJet {
    /// Indexed `[i][(j, k)]` with `(j, k)` packed as `(1,1), (1,2), (2,2)`.
    gamma: [[Jet2; 3]; 2],
}

impl ChristoffelJet {
    /// Γ^i_{jk}; indices are 1-based like the classical notation.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Jet2 {
        let pair = match (j.min(k), j.max(k)) {
            (1, 1) => 0,
            (1, 2) => 1,
            (2, 2) => 2,
            _ => panic!("index out of range"),
        };
        &self.gamma[i - 1][pair]
    }
}

impl MetricJet {
    pub fn from_jets(base_point: [f64; 2], g11: Jet2, g12: Jet2, g22: Jet2) -> Self {
        let order = g11.order().min(g12.order()).min(g22.order());
        MetricJet {
            base_point,
            order,
            g11: g11.truncated(order),
            g12: g12.truncated(order),
            g22: g22.truncated(order),
        }
    }

    /// Constant-coefficient metric.
    pub fn constant(g11: f64, g12: f64, g22: f64, order: usize) -> Self {
        MetricJet::from_jets(
            [0.0, 0.0],
            Jet2::constant(g11, order),
            Jet2::constant(g12, order),
            Jet2::constant(g22, order),
        )
    }

    /// The flat Euclidean metric.
    pub fn euclidean(order: usize) -> Self {
        MetricJet::constant(1.0, 0.0, 1.0, order)
    }

    /// The round metric `(1 + (u1^2 + u2^2)/4)^{-2} δ` with K = +1.
    pub fn round_sphere(order: usize) -> Self {
        let u1 = Jet2::variable(1, order);
        let u2 = Jet2::variable(2, order);
        let r2 = u1.mul(&u1) + u2.mul(&u2);
        let lambda = (Jet2::constant(1.0, order) + r2.scale(0.25))
            .powi(-2)
            .expect("conformal factor is nonzero at the base point");
        MetricJet::from_jets([0.0, 0.0], lambda.clone(), Jet2::zero(order), lambda)
    }

    /// The upper half-plane metric `δ / (y2)^2` around (0, 1), with K = -1.
    pub fn poincare_upper_half(order: usize) -> Self {
        let y2 = Jet2::constant(1.0, order) + Jet2::variable(2, order);
        let lambda = y2.powi(-2).expect("y2 = 1 at the base point");
        MetricJet::from_jets([0.0, 1.0], lambda.clone(), Jet2::zero(order), lambda)
    }

    pub fn base_point(&self) -> [f64; 2] {
        self.base_point
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Component jets `(g11, g12, g22)`.
    pub fn components(&self) -> [&Jet2; 3] {
        [&self.g11, &self.g12, &self.g22]
    }

    /// `g_ij` with 1-based indices.
    pub fn component(&self, i: usize, j: usize) -> &Jet2 {
        match (i.min(j), i.max(j)) {
            (1, 1) => &self.g11,
            (1, 2) => &self.g12,
            (2, 2) => &self.g22,
            _ => panic!("index out of range"),
        }
    }

    /// `det g` as a jet.
    pub fn det(&self) -> Jet2 {
        self.g11.mul(&self.g22) - self.g12.mul(&self.g12)
    }

    /// Value matrix at the base point.
    pub fn at_base(&self) -> [[f64; 2]; 2] {
        [
            [self.g11.get(0, 0), self.g12.get(0, 0)],
            [self.g12.get(0, 0), self.g22.get(0, 0)],
        ]
    }

    /// Nondegeneracy gate: returns `det g` and the signature, failing when
    /// the determinant vanishes at the base point.
    pub fn check_nondegenerate(&self) -> Result<(Jet2, Signature)> {
        let det = self.det();
        let d0 = det.get(0, 0);
        let scale = self
            .components()
            .iter()
            .fold(1.0_f64, |m, g| m.max(g.get(0, 0).abs()));
        if d0.abs() <= 1e-12 * scale * scale {
            return Err(Error::NondegeneracyFailure { det: d0 });
        }
        let signature = if d0 < 0.0 {
            Signature::Indefinite
        } else if self.g11.get(0, 0) > 0.0 {
            Signature::PositiveDefinite
        } else {
            Signature::NegativeDefinite
        };
        Ok((det, signature))
    }

    /// Inverse components `(g^11, g^12, g^22)` to the truncation order.
    pub fn inverse_metric(&self) -> Result<[Jet2; 3]> {
        self.check_nondegenerate()?;
        let det = self.det();
        Ok([
            self.g22.div(&det)?,
            self.g12.div(&det)?.scale(-1.0),
            self.g11.div(&det)?,
        ])
    }

    /// Levi-Civita symbols `Γ^i_{jk} = ½ g^{il} (∂_j g_{lk} + ∂_k g_{jl} − ∂_l g_{jk})`.
    pub fn christoffel(&self) -> Result<ChristoffelJet> {
        if self.order == 0 {
            return Err(Error::OrderTooSmall { needed: 1, have: 0 });
        }
        let gup = self.inverse_metric()?;
        let gup = |i: usize, j: usize| -> &Jet2 {
            match (i.min(j), i.max(j)) {
                (1, 1) => &gup[0],
                (1, 2) => &gup[1],
                (2, 2) => &gup[2],
                _ => unreachable!(),
            }
        };
        // dg[k-1][(i,j)] = ∂_k g_ij, order N-1.
        let mut dg = Vec::with_capacity(2);
        for k in 1..=2usize {
            dg.push([
                self.g11.partial(k)?,
                self.g12.partial(k)?,
                self.g22.partial(k)?,
            ]);
        }
        let dgf = |k: usize, i: usize, j: usize| -> &Jet2 {
            let pair = match (i.min(j), i.max(j)) {
                (1, 1) => 0,
                (1, 2) => 1,
                (2, 2) => 2,
                _ => unreachable!(),
            };
            &dg[k - 1][pair]
        };
        let n1 = self.order - 1;
        let mut gamma: [[Jet2; 3]; 2] = [
            [Jet2::zero(n1), Jet2::zero(n1), Jet2::zero(n1)],
            [Jet2::zero(n1), Jet2::zero(n1), Jet2::zero(n1)],
        ];
        for i in 1..=2usize {
            for (pair, (j, k)) in [(1, 1), (1, 2), (2, 2)].iter().enumerate() {
                let mut total = Jet2::zero(n1);
                for l in 1..=2usize {
                    let bracket = dgf(*j, l, *k) + dgf(*k, *j, l) - dgf(l, *j, *k);
                    total = total + gup(i, l).truncated(n1).mul(&bracket);
                }
                gamma[i - 1][pair] = total.scale(0.5);
            }
        }
        Ok(ChristoffelJet { gamma })
    }

    /// Gauss curvature `K = R_1212 / det g` as a jet of order `N - 2`.
    pub fn gauss_curvature(&self) -> Result<Jet2> {
        if self.order < 2 {
            return Err(Error::OrderTooSmall {
                needed: 2,
                have: self.order,
            });
        }
        let gamma = self.christoffel()?;
        let n2 = self.order - 2;
        // R^i_{212} = ∂_1 Γ^i_{22} − ∂_2 Γ^i_{12} + Γ^i_{1m} Γ^m_{22} − Γ^i_{2m} Γ^m_{12}.
        let mut r_up = [Jet2::zero(n2), Jet2::zero(n2)];
        for i in 1..=2usize {
            let mut total =
                gamma.get(i, 2, 2).partial(1)? - gamma.get(i, 1, 2).partial(2)?;
            for m in 1..=2usize {
                total = total + gamma.get(i, 1, m).truncated(n2).mul(gamma.get(m, 2, 2));
                total = total - gamma.get(i, 2, m).truncated(n2).mul(gamma.get(m, 1, 2));
            }
            r_up[i - 1] = total.truncated(n2);
        }
        // R_1212 = g_{1i} R^i_{212}.
        let r1212 = self.g11.truncated(n2).mul(&r_up[0]) + self.g12.truncated(n2).mul(&r_up[1]);
        r1212.div(&self.det().truncated(n2))
    }

    /// Pullback `φ*g` through a formal diffeomorphism `φ` fixing the base
    /// point (both components have zero constant term).
    pub fn pullback(&self, phi: (&Jet2, &Jet2)) -> Result<MetricJet> {
        let d_phi = [
            [phi.0.partial(1)?, phi.0.partial(2)?],
            [phi.1.partial(1)?, phi.1.partial(2)?],
        ];
        let comp = [
            self.g11.compose((phi.0, phi.1))?,
            self.g12.compose((phi.0, phi.1))?,
            self.g22.compose((phi.0, phi.1))?,
        ];
        let comp_f = |i: usize, j: usize| -> &Jet2 {
            match (i.min(j), i.max(j)) {
                (1, 1) => &comp[0],
                (1, 2) => &comp[1],
                (2, 2) => &comp[2],
                _ => unreachable!(),
            }
        };
        let order = self.order - 1;
        let mut out = [Jet2::zero(order), Jet2::zero(order), Jet2::zero(order)];
        for (pair, (a, b)) in [(1usize, 1usize), (1, 2), (2, 2)].iter().enumerate() {
            let mut total = Jet2::zero(order);
            for i in 1..=2usize {
                for j in 1..=2usize {
                    let term = comp_f(i, j)
                        .truncated(order)
                        .mul(&d_phi[i - 1][a - 1])
                        .mul(&d_phi[j - 1][b - 1]);
                    total = total + term;
                }
            }
            out[pair] = total;
        }
        let [o11, o12, o22] = out;
        Ok(MetricJet::from_jets(self.base_point, o11, o12, o22))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::jet2_len;
    use proptest::prelude::*;

    /// Central finite differences of a polynomial component evaluation,
    /// with one Richardson step; used as the independent oracle.
    fn fd1(f: &dyn Fn(f64, f64) -> f64, x: f64, y: f64, dir: usize, h: f64) -> f64 {
        let d = |h: f64| {
            if dir == 1 {
                (f(x + h, y) - f(x - h, y)) / (2.0 * h)
            } else {
                (f(x, y + h) - f(x, y - h)) / (2.0 * h)
            }
        };
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    fn fd2(f: &dyn Fn(f64, f64) -> f64, x: f64, y: f64, d1: usize, d2: usize, h: f64) -> f64 {
        let d = |h: f64| -> f64 {
            if d1 == d2 {
                let (p, m) = if d1 == 1 {
                    (f(x + h, y), f(x - h, y))
                } else {
                    (f(x, y + h), f(x, y - h))
                };
                (p - 2.0 * f(x, y) + m) / (h * h)
            } else {
                (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h))
                    / (4.0 * h * h)
            }
        };
        (4.0 * d(h / 2.0) - d(h)) / 3.0
    }

    /// Brioschi formula for K at a point, from component evaluations only.
    /// Genuinely independent of the Christoffel route.
    pub(crate) fn brioschi_fd(m: &MetricJet, u1: f64, u2: f64) -> f64 {
        let g = m.components();
        let e = |x: f64, y: f64| g[0].eval(x, y);
        let f = |x: f64, y: f64| g[1].eval(x, y);
        let gg = |x: f64, y: f64| g[2].eval(x, y);
        let h = 2e-3;
        let e_v = fd1(&e, u1, u2, 2, h);
        let e_u = fd1(&e, u1, u2, 1, h);
        let g_u = fd1(&gg, u1, u2, 1, h);
        let g_v = fd1(&gg, u1, u2, 2, h);
        let f_u = fd1(&f, u1, u2, 1, h);
        let f_v = fd1(&f, u1, u2, 2, h);
        let e_vv = fd2(&e, u1, u2, 2, 2, h);
        let g_uu = fd2(&gg, u1, u2, 1, 1, h);
        let f_uv = fd2(&f, u1, u2, 1, 2, h);
        let (ev, fv, gv) = (e(u1, u2), f(u1, u2), gg(u1, u2));
        let det3 = |m: [[f64; 3]; 3]| -> f64 {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let m1 = [
            [-0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v],
            [f_v - 0.5 * g_u, ev, fv],
            [0.5 * g_v, fv, gv],
        ];
        let m2 = [
            [0.0, 0.5 * e_v, 0.5 * g_u],
            [0.5 * e_v, ev, fv],
            [0.5 * g_u, fv, gv],
        ];
        let den = ev * gv - fv * fv;
        (det3(m1) - det3(m2)) / (den * den)
    }

    #[test]
    fn euclidean_metric_is_nondegenerate() {
        let m = MetricJet::euclidean(4);
        let (det, sig) = m.check_nondegenerate().unwrap();
        assert_eq!(det.get(0, 0), 1.0);
        assert_eq!(sig, Signature::PositiveDefinite);
    }

    #[test]
    fn null_coordinates_metric_is_indefinite() {
        // g = 2 dy1 ∘ dy2.
        let m = MetricJet::constant(0.0, 1.0, 0.0, 4);
        let (det, sig) = m.check_nondegenerate().unwrap();
        assert_eq!(det.get(0, 0), -1.0);
        assert_eq!(sig, Signature::Indefinite);
    }

    #[test]
    fn cubic_coefficient_form_is_degenerate_at_origin() {
        // g = y1 * (dy1 ∘ dy2): vanishes at y = 0.
        let y1 = Jet2::variable(1, 4);
        let m = MetricJet::from_jets([0.0, 0.0], Jet2::zero(4), y1.scale(0.5), Jet2::zero(4));
        assert!(matches!(
            m.check_nondegenerate(),
            Err(Error::NondegeneracyFailure { .. })
        ));
    }

    #[test]
    fn inverse_of_identity() {
        let m = MetricJet::euclidean(4);
        let inv = m.inverse_metric().unwrap();
        assert!(inv[0].approx_eq(&Jet2::constant(1.0, 4), 1e-14));
        assert!(inv[1].approx_eq(&Jet2::zero(4), 1e-14));
        assert!(inv[2].approx_eq(&Jet2::constant(1.0, 4), 1e-14));
    }

    #[test]
    fn inverse_of_constant_diagonal() {
        let m = MetricJet::constant(2.0, 0.0, 0.5, 4);
        let inv = m.inverse_metric().unwrap();
        assert!(inv[0].approx_eq(&Jet2::constant(0.5, 4), 1e-14));
        assert!(inv[2].approx_eq(&Jet2::constant(2.0, 4), 1e-14));
    }

    #[test]
    fn inverse_of_conformal_factor_is_geometric_series() {
        // λ = 1 + u1 gives λ^{-1} = 1 - u1 + u1^2 - ...
        let lambda = Jet2::constant(1.0, 5) + Jet2::variable(1, 5);
        let m = MetricJet::from_jets([0.0, 0.0], lambda.clone(), Jet2::zero(5), lambda);
        let inv = m.inverse_metric().unwrap();
        let mut expect = Jet2::zero(5);
        for k in 0..=5usize {
            expect.set(k, 0, if k % 2 == 0 { 1.0 } else { -1.0 });
        }
        assert!(inv[0].approx_eq(&expect, 1e-13));
        assert!(inv[1].approx_eq(&Jet2::zero(5), 1e-13));
        // g^{ik} g_{kj} = δ^i_j to truncation.
        let id_check = inv[0].mul(m.component(1, 1)) + inv[1].mul(m.component(2, 1));
        assert!(id_check.approx_eq(&Jet2::constant(1.0, 5), 1e-12));
    }

    #[test]
    fn inverse_is_involutive() {
        let m = MetricJet::round_sphere(6);
        let inv = m.inverse_metric().unwrap();
        let minv = MetricJet::from_jets([0.0, 0.0], inv[0].clone(), inv[1].clone(), inv[2].clone());
        let back = minv.inverse_metric().unwrap();
        for (b, orig) in back.iter().zip(m.components()) {
            assert!(b.approx_eq(orig, 1e-10));
        }
    }

    #[test]
    fn christoffel_of_constant_metric_vanishes() {
        let m = MetricJet::constant(2.0, 0.5, 1.0, 5);
        let c = m.christoffel().unwrap();
        for i in 1..=2 {
            for (j, k) in [(1, 1), (1, 2), (2, 2)] {
                assert!(c.get(i, j, k).approx_eq(&Jet2::zero(4), 1e-14));
            }
        }
    }

    #[test]
    fn christoffel_of_exponential_conformal_metric() {
        // g = e^{2 u1} δ: at the base point Γ^1_11 = 1, Γ^1_22 = -1, Γ^2_12 = 1.
        let lambda = Jet2::variable(1, 6).scale(2.0).exp();
        let m = MetricJet::from_jets([0.0, 0.0], lambda.clone(), Jet2::zero(6), lambda);
        let c = m.christoffel().unwrap();
        assert!((c.get(1, 1, 1).get(0, 0) - 1.0).abs() < 1e-12);
        assert!((c.get(1, 2, 2).get(0, 0) + 1.0).abs() < 1e-12);
        assert!((c.get(2, 1, 2).get(0, 0) - 1.0).abs() < 1e-12);
        for (i, j, k) in [(1, 1, 2), (2, 1, 1), (2, 2, 2)] {
            assert!(c.get(i, j, k).get(0, 0).abs() < 1e-12);
        }
    }

    #[test]
    fn christoffel_of_upper_half_plane() {
        let m = MetricJet::poincare_upper_half(6);
        let c = m.christoffel().unwrap();
        assert!((c.get(1, 1, 2).get(0, 0) + 1.0).abs() < 1e-12);
        assert!((c.get(2, 1, 1).get(0, 0) - 1.0).abs() < 1e-12);
        assert!((c.get(2, 2, 2).get(0, 0) + 1.0).abs() < 1e-12);
        for (i, j, k) in [(1, 1, 1), (1, 2, 2), (2, 1, 2)] {
            assert!(c.get(i, j, k).get(0, 0).abs() < 1e-12);
        }
    }

    #[test]
    fn curvature_of_constant_metrics_vanishes() {
        for (a, b, c) in [(1.0, 0.0, 1.0), (2.0, 0.5, 1.0), (1.0, 0.0, -1.0)] {
            let m = MetricJet::constant(a, b, c, 6);
            let k = m.gauss_curvature().unwrap();
            assert!(k.approx_eq(&Jet2::zero(4), 1e-13), "K != 0 for {a},{b},{c}");
        }
    }

    #[test]
    fn curvature_of_round_sphere_is_one() {
        let m = MetricJet::round_sphere(8);
        let k = m.gauss_curvature().unwrap();
        assert!(
            k.approx_eq(&Jet2::constant(1.0, 6), 1e-10),
            "K jet: {k}"
        );
        // Cross-check the base value with the finite-difference Brioschi oracle.
        assert!((brioschi_fd(&m, 0.0, 0.0) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn curvature_of_upper_half_plane_is_minus_one() {
        let m = MetricJet::poincare_upper_half(8);
        let k = m.gauss_curvature().unwrap();
        assert!(k.approx_eq(&Jet2::constant(-1.0, 6), 1e-10));
        assert!((brioschi_fd(&m, 0.0, 0.0) + 1.0).abs() < 1e-8);
    }

    #[test]
    fn metric_compatibility_identity() {
        // ∂_k g_ij = g_lj Γ^l_ik + g_il Γ^l_jk, coefficient-wise.
        let m = MetricJet::round_sphere(6);
        let c = m.christoffel().unwrap();
        for k in 1..=2usize {
            for (i, j) in [(1, 1), (1, 2), (2, 2)] {
                let lhs = m.component(i, j).partial(k).unwrap();
                let mut rhs = Jet2::zero(m.order() - 1);
                for l in 1..=2usize {
                    rhs = rhs
                        + m.component(l, j).truncated(5).mul(c.get(l, i, k))
                        + m.component(i, l).truncated(5).mul(c.get(l, j, k));
                }
                assert!(lhs.approx_eq(&rhs, 1e-10));
            }
        }
    }

    fn arb_metric(order: usize) -> impl Strategy<Value = MetricJet> {
        let len = jet2_len(order);
        (
            prop::collection::vec(-0.2..0.2f64, len),
            prop::collection::vec(-0.2..0.2f64, len),
            prop::collection::vec(-0.2..0.2f64, len),
        )
            .prop_map(move |(a, b, c)| {
                let mut g11 = Jet2::from_coeffs(order, a).unwrap();
                let mut g12 = Jet2::from_coeffs(order, b).unwrap();
                let mut g22 = Jet2::from_coeffs(order, c).unwrap();
                g11.set(0, 0, 1.0 + g11.get(0, 0));
                g12.set(0, 0, 0.25 * g12.get(0, 0));
                g22.set(0, 0, 1.0 + g22.get(0, 0));
                MetricJet::from_jets([0.0, 0.0], g11, g12, g22)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn compatibility_holds_for_random_metrics(m in arb_metric(6)) {
            let c = m.christoffel().unwrap();
            for k in 1..=2usize {
                for (i, j) in [(1, 1), (1, 2), (2, 2)] {
                    let lhs = m.component(i, j).partial(k).unwrap();
                    let mut rhs = Jet2::zero(5);
                    for l in 1..=2usize {
                        rhs = rhs
                            + m.component(l, j).truncated(5).mul(c.get(l, i, k))
                            + m.component(i, l).truncated(5).mul(c.get(l, j, k));
                    }
                    prop_assert!(lhs.approx_eq(&rhs, 1e-10));
                }
            }
        }

        #[test]
        fn inverse_metric_involution(m in arb_metric(6)) {
            let inv = m.inverse_metric().unwrap();
            let minv = MetricJet::from_jets([0.0, 0.0], inv[0].clone(), inv[1].clone(), inv[2].clone());
            let back = minv.inverse_metric().unwrap();
            for (b, orig) in back.iter().zip(m.components()) {
                prop_assert!(b.approx_eq(orig, 1e-10));
            }
        }
    }

    #[test]
    fn curvature_is_coordinate_invariant() {
        // K(φ*g) = K(g) ∘ φ for a polynomial diffeomorphism φ fixing 0.
        let m = MetricJet::round_sphere(8);
        let mut phi1 = Jet2::zero(8);
        phi1.set(1, 0, 1.0);
        phi1.set(0, 1, 0.3);
        phi1.set(2, 0, 0.2);
        phi1.set(1, 1, -0.1);
        let mut phi2 = Jet2::zero(8);
        phi2.set(1, 0, -0.2);
        phi2.set(0, 1, 1.1);
        phi2.set(0, 2, 0.15);
        phi2.set(2, 1, 0.05);
        let pulled = m.pullback((&phi1, &phi2)).unwrap();
        let k_pulled = pulled.gauss_curvature().unwrap();
        let k_composed = m
            .gauss_curvature()
            .unwrap()
            .compose((&phi1, &phi2))
            .unwrap()
            .truncated(k_pulled.order());
        assert!(
            k_pulled.approx_eq(&k_composed, 1e-8),
            "pullback K: {k_pulled}\ncomposed K: {k_composed}"
        );
    }

    #[test]
    fn brioschi_oracle_matches_jet_curvature_off_base() {
        let m = MetricJet::round_sphere(10);
        let k = m.gauss_curvature().unwrap();
        for (u1, u2) in [(0.02, -0.01), (-0.015, 0.025), (0.03, 0.03)] {
            let oracle = brioschi_fd(&m, u1, u2);
            assert!((k.eval(u1, u2) - oracle).abs() < 1e-8);
        }
    }
}
