//! Degree-by-degree formal solver for Hessian representations.
//!
//! The unknowns are four jets `(x1, x2, p1, p2)` around the base point. The
//! metric identity `g = dp_i ∘ dx^i` and the closedness of `p_i dx^i` give
//! four residual series
//!
//! ```text
//! R11 = ∂1 p_i ∂1 x^i − g11          R22 = ∂2 p_i ∂2 x^i − g22
//! R12 = ½(∂1 p_i ∂2 x^i + ∂2 p_i ∂1 x^i) − g12
//! R0  = ∂1 p_i ∂2 x^i − ∂2 p_i ∂1 x^i
//! ```
//!
//! Initial data prescribes the four unknowns along the curve `y2 = 0`;
//! the remaining coefficients are found one total degree at a time. Degree
//! one is a small conic problem (the integral-element quadric); every
//! higher degree is a square linear system whose consistency the solver
//! checks rather than assumes. The potential `f` is recovered from
//! `df = p_i dx^i` afterwards and the final chart is verified through an
//! independent composition/inversion route.

use crate::eds::{characteristic_cubic, BinaryCubic, FramePoint, IntegralElement, SymCubicCoeffs};
use crate::error::{Error, Result};
use crate::jet::{invert_map, Jet1, Jet2};
use crate::linalg::{solve_zero_gauge, Mat};
use crate::metric::MetricJet;

/// Tolerance for the tangential-constraint residual of initial data.
pub const CONSTRAINT_TOL: f64 = 1e-9;
/// Tolerance for per-degree linear-system consistency.
pub const CONSISTENCY_TOL: f64 = 1e-9;
/// The initial curve direction must miss the characteristic cubic by this much.
pub const CHARACTERISTIC_TOL: f64 = 1e-8;
/// Residual jets of a finished solve must stay below this.
pub const SOLVE_RESIDUAL_TOL: f64 = 1e-8;
/// Pivot tolerance of the per-degree eliminations.
pub const PIVOT_TOL: f64 = 1e-10;

const SCAN: [f64; 12] = [
    1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0, 1.0 / 3.0, -1.0 / 3.0, 4.0, -4.0,
];

/// Values of the unknowns along the initial curve `y2 = 0`.
///
/// Three of the four curves are free; `p1` is pinned by the pullback of the
/// metric to the curve, `p1' x1' + p2' x2' = g11(t, 0)`.
#[derive(Debug, Clone)]
pub struct InitialData {
    pub x1_curve: Jet1,
    pub x2_curve: Jet1,
    pub p2_curve: Jet1,
    /// Derived from the tangential constraint.
    pub p1_curve: Jet1,
    /// Potential value at the base point.
    pub f0: f64,
    /// Human-readable record of how the gauge was chosen.
    pub gauge_note: String,
}

/// What validation learned about a data set.
#[derive(Debug, Clone)]
pub struct InitialDiagnostics {
    pub constraint_residual: f64,
    /// The integral element the first two solved degrees determine.
    pub element: IntegralElement,
    pub cubic: BinaryCubic,
    /// `E*(C)` evaluated on the initial curve direction.
    pub cubic_value: f64,
    /// Set when the cubic vanishes identically (flat Frobenius regime).
    pub non_ordinary: bool,
}

/// Per-degree record of the linear solves.
#[derive(Debug, Clone, Copy)]
pub struct DegreeRecord {
    pub degree: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub consistency: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SolveDiagnostics {
    /// `max |coeff|` of each residual jet per degree, `[R11, R12, R22, R0]`.
    pub residual_per_degree: [Vec<f64>; 4],
    pub rank_profile: Vec<DegreeRecord>,
    /// Mixed-partial consistency of the potential recovery.
    pub closedness: f64,
}

/// A solved chart: coordinates, momenta, potential, the inverse chart, and
/// the potential expressed in the new coordinates.
#[derive(Debug, Clone)]
pub struct HessianChart {
    pub base_point: [f64; 2],
    pub order: usize,
    pub x1: Jet2,
    pub x2: Jet2,
    pub p1: Jet2,
    pub p2: Jet2,
    pub f: Jet2,
    /// `y(x)` as jets in the deviation of `x` from its base value.
    pub ymap: (Jet2, Jet2),
    /// `F = f ∘ y`, the potential in chart coordinates.
    pub potential_x: Jet2,
    pub gauge_note: String,
    pub diagnostics: SolveDiagnostics,
}

/// Per-degree maxima of the verification identity residual.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub per_degree: Vec<f64>,
    pub max_residual: f64,
}

/// The four residual jets of a candidate `(x1, x2, p1, p2)`.
pub fn residual_jets(x: [&Jet2; 2], p: [&Jet2; 2], m: &MetricJet) -> Result<[Jet2; 4]> {
    let n1 = x[0].order() - 1;
    let mut d = [[Jet2::zero(n1), Jet2::zero(n1)], [Jet2::zero(n1), Jet2::zero(n1)]];
    let mut dp = d.clone();
    for i in 0..2 {
        for a in 0..2 {
            d[i][a] = x[i].partial(a + 1)?;
            dp[i][a] = p[i].partial(a + 1)?;
        }
    }
    let pair = |pa: usize, xa: usize| -> Jet2 {
        let mut total = Jet2::zero(n1);
        for i in 0..2 {
            total = total + dp[i][pa].mul(&d[i][xa]);
        }
        total
    };
    let r11 = pair(0, 0) - m.component(1, 1).truncated(n1);
    let r22 = pair(1, 1) - m.component(2, 2).truncated(n1);
    let r12 = (pair(0, 1) + pair(1, 0)).scale(0.5) - m.component(1, 2).truncated(n1);
    let r0 = pair(0, 1) - pair(1, 0);
    Ok([r11, r12, r22, r0])
}

/// Builds the default initial data: `x1 = t`, optional gauge for the two
/// free curves, `p1` integrated from the tangential constraint. Without an
/// explicit gauge, `p2 = c t` is scanned over a deterministic list until
/// validation accepts.
pub fn default_initial_data(
    m: &MetricJet,
    order: usize,
    gauge: Option<(Jet1, Jet1)>,
) -> Result<InitialData> {
    m.check_nondegenerate()?;
    let x1 = Jet1::variable(order);
    if let Some((x2, p2)) = gauge {
        let data = build_data(m, order, x1, x2, p2, "explicit gauge".into())?;
        validate_initial_data(m, &data)?;
        return Ok(data);
    }
    let mut last = Error::NoAdmissibleGauge { tried: SCAN.len() };
    for c in SCAN {
        let p2 = Jet1::variable(order).scale(c);
        let data = build_data(
            m,
            order,
            x1.clone(),
            Jet1::zero(order),
            p2,
            format!("default scan c = {c}"),
        )?;
        match validate_initial_data(m, &data) {
            Ok(_) => return Ok(data),
            Err(e) => last = e,
        }
    }
    Err(match last {
        Error::NoAdmissibleGauge { .. } => Error::NoAdmissibleGauge { tried: SCAN.len() },
        other => other,
    })
}

fn build_data(
    m: &MetricJet,
    order: usize,
    x1: Jet1,
    x2: Jet1,
    p2: Jet1,
    gauge_note: String,
) -> Result<InitialData> {
    let g11_line = m.component(1, 1).restrict_to_axis().truncated(order);
    let x1d = x1.derivative()?;
    if x1d.get(0).abs() < 1e-12 {
        return Err(Error::ConstraintViolated(
            "x1_curve'(0) vanishes: the curve parameter is inadmissible".into(),
        ));
    }
    let rhs = g11_line
        .truncated(order - 1)
        .sub(&p2.derivative()?.mul(&x2.derivative()?));
    let p1 = rhs.div(&x1d)?.antiderivative(0.0).truncated(order);
    Ok(InitialData {
        x1_curve: x1,
        x2_curve: x2,
        p2_curve: p2,
        p1_curve: p1,
        f0: 0.0,
        gauge_note,
    })
}

/// Checks the tangential constraint and the noncharacteristicity of the
/// initial curve. The latter solves the first two degrees and evaluates the
/// characteristic cubic of the resulting integral element on the curve
/// direction; a vanishing cubic is accepted only in the flat (Frobenius)
/// regime where the curvature itself vanishes.
pub fn validate_initial_data(m: &MetricJet, data: &InitialData) -> Result<InitialDiagnostics> {
    let order = data.x1_curve.order();
    if order < 2 || m.order() < 2 {
        return Err(Error::OrderTooSmall {
            needed: 2,
            have: order.min(m.order()),
        });
    }
    // (i) pullback of g to the curve.
    let lhs = data
        .p1_curve
        .derivative()?
        .mul(&data.x1_curve.derivative()?)
        .add(&data.p2_curve.derivative()?.mul(&data.x2_curve.derivative()?));
    let g11_line = m.component(1, 1).restrict_to_axis();
    let diff = lhs.sub(&g11_line.truncated(order - 1));
    let scale = 1.0_f64.max(g11_line.coeffs().iter().fold(0.0, |a, c| a.max(c.abs())));
    let constraint_residual = diff.coeffs().iter().fold(0.0_f64, |a, c| a.max(c.abs()));
    if constraint_residual > CONSTRAINT_TOL * scale {
        return Err(Error::ConstraintViolated(format!(
            "tangential constraint residual {constraint_residual:e}"
        )));
    }

    // (ii) noncharacteristic curve direction.
    let state = solve_through(m, data, order, 2).map_err(|e| match e {
        Error::RankCollapse { message, .. } => Error::CharacteristicInitialData(message),
        other => other,
    })?;
    let element = extract_element(m, &state)?;
    let cubic = characteristic_cubic(&element);
    let direction = [
        data.x1_curve.derivative()?.get(0),
        data.x2_curve.derivative()?.get(0),
    ];
    let cubic_value = cubic.eval(direction[0], direction[1]);
    let cubic_scale = 1.0_f64.max(element.p.max_abs());
    let non_ordinary = cubic.max_abs() <= 1e-10 * cubic_scale;
    if non_ordinary {
        if element.frame.curvature().abs() > CHARACTERISTIC_TOL {
            return Err(Error::CharacteristicInitialData(
                "characteristic cubic vanishes although the curvature does not".into(),
            ));
        }
        // Flat Frobenius regime: every direction is as good as any other.
    } else if cubic_value.abs() <= CHARACTERISTIC_TOL {
        return Err(Error::CharacteristicInitialData(format!(
            "curve direction lies on the characteristic cubic (value {cubic_value:e})"
        )));
    }
    Ok(InitialDiagnostics {
        constraint_residual,
        element,
        cubic,
        cubic_value,
        non_ordinary,
    })
}

struct SolveState {
    x: [Jet2; 2],
    p: [Jet2; 2],
    rank_profile: Vec<DegreeRecord>,
}

/// Solves the four-equation system degree by degree up to `up_to`.
///
/// The march carries one scratch degree beyond the requested order: the
/// degree-`d` coefficients are only fully pinned once the residual rows of
/// degree `d` — which also involve degree-`d+1` coefficients — are brought
/// in. (The quadric relation cutting out integral elements lives exactly
/// one degree above the coefficients it constrains.) Each step therefore
/// solves a two-degree window and commits its lower half.
fn solve_through(
    m: &MetricJet,
    data: &InitialData,
    order: usize,
    up_to: usize,
) -> Result<SolveState> {
    let work = order + 1;
    let mut x = [Jet2::zero(work), Jet2::zero(work)];
    let mut p = [Jet2::zero(work), Jet2::zero(work)];
    for k in 0..=order {
        x[0].set(k, 0, data.x1_curve.get(k));
        x[1].set(k, 0, data.x2_curve.get(k));
        p[0].set(k, 0, data.p1_curve.get(k));
        p[1].set(k, 0, data.p2_curve.get(k));
    }
    let mut rank_profile = Vec::new();

    solve_degree_one(m, &mut x, &mut p)?;
    rank_profile.push(DegreeRecord {
        degree: 1,
        unknowns: 4,
        rank: 3,
        consistency: 0.0,
    });

    if up_to >= 2 {
        rank_profile.push(solve_window_two(m, &mut x, &mut p, order)?);
    }
    for d in 3..=up_to {
        let record = solve_window(m, &mut x, &mut p, d, order)?;
        rank_profile.push(record);
    }
    Ok(SolveState {
        x: [x[0].truncated(order), x[1].truncated(order)],
        p: [p[0].truncated(order), p[1].truncated(order)],
        rank_profile,
    })
}

/// Unknown coefficient slots `(series, degree, u2-exponent)` of one degree.
fn degree_unknowns(e: usize, data_order: usize) -> Vec<(usize, usize, usize)> {
    let j_start = if e <= data_order { 1 } else { 0 };
    let mut list = Vec::new();
    for s in 0..4usize {
        for j in j_start..=e {
            list.push((s, e, j));
        }
    }
    list
}

fn apply_delta(
    x: &mut [Jet2; 2],
    p: &mut [Jet2; 2],
    unknowns: &[(usize, usize, usize)],
    delta: &[f64],
) {
    for (col, &(s, e, j)) in unknowns.iter().enumerate() {
        let target = match s {
            0 => &mut x[0],
            1 => &mut x[1],
            2 => &mut p[0],
            _ => &mut p[1],
        };
        let old = target.get(e - j, j);
        target.set(e - j, j, old + delta[col]);
    }
}

/// Flattens the requested degrees of the four residual jets into one vector.
fn collect_rows(res: &[Jet2; 4], degrees: &[usize]) -> Vec<f64> {
    let mut rows = Vec::new();
    for r in res {
        for &deg in degrees {
            for pos in 0..=deg {
                rows.push(r.get(deg - pos, pos));
            }
        }
    }
    rows
}

/// Exact Jacobian of the selected residual rows with respect to the given
/// unknown coefficients, evaluated at the current jets.
fn assemble_jacobian(
    x: &[Jet2; 2],
    p: &[Jet2; 2],
    unknowns: &[(usize, usize, usize)],
    degrees: &[usize],
) -> Result<Mat> {
    let row_count: usize = 4 * degrees.iter().map(|d| d + 1).sum::<usize>();
    let block: usize = degrees.iter().map(|d| d + 1).sum();
    let row_of = |eq: usize, deg_idx: usize, pos: usize| -> usize {
        let offset: usize = degrees[..deg_idx].iter().map(|d| d + 1).sum();
        eq * block + offset + pos
    };
    let mut mat = Mat::zeros(row_count, unknowns.len());
    for (col, &(s, e, j)) in unknowns.iter().enumerate() {
        let (a_exp, b_exp) = (e - j, j);
        let (partner, is_x) = if s < 2 {
            (&p[s], true)
        } else {
            (&x[s - 2], false)
        };
        let pd1 = partner.partial(1)?;
        let pd2 = partner.partial(2)?;
        let mut add_pairing = |jet: &Jet2, da: usize, db: usize, factor: f64, eq: usize| {
            if factor == 0.0 {
                return;
            }
            for (deg_idx, &deg) in degrees.iter().enumerate() {
                for pos in 0..=deg {
                    let (ra, rb) = (deg - pos, pos);
                    if ra < da || rb < db {
                        continue;
                    }
                    let v = jet.get(ra - da, rb - db) * factor;
                    if v != 0.0 {
                        let row = row_of(eq, deg_idx, pos);
                        let old = mat.get(row, col);
                        mat.set(row, col, old + v);
                    }
                }
            }
        };
        let f1 = a_exp as f64;
        let f2 = b_exp as f64;
        if a_exp >= 1 {
            add_pairing(&pd1, a_exp - 1, b_exp, f1, 0); // R11
            add_pairing(&pd2, a_exp - 1, b_exp, 0.5 * f1, 1); // R12
            let r0_sign = if is_x { -1.0 } else { 1.0 };
            add_pairing(&pd2, a_exp - 1, b_exp, r0_sign * f1, 3); // R0
        }
        if b_exp >= 1 {
            add_pairing(&pd1, a_exp, b_exp - 1, 0.5 * f2, 1); // R12
            add_pairing(&pd2, a_exp, b_exp - 1, f2, 2); // R22
            let r0_sign = if is_x { 1.0 } else { -1.0 };
            add_pairing(&pd1, a_exp, b_exp - 1, r0_sign * f2, 3); // R0
        }
    }
    Ok(mat)
}

/// Degree one: two linear equations and the integral-element quadric.
///
/// With `c = ∂2 x(0)` and `d = ∂2 p(0)` unknown, the degree-0 residuals
/// demand `b · c = g12`, `a · d = g12`, `c · d = g22` where `a = ∂1 x(0)`
/// and `b = ∂1 p(0)` come from the curves. The two linear equations leave a
/// two-parameter affine family; the quadric becomes a conic in those
/// parameters, solved by a deterministic branch scan.
fn solve_degree_one(m: &MetricJet, x: &mut [Jet2; 2], p: &mut [Jet2; 2]) -> Result<()> {
    let a = [x[0].get(1, 0), x[1].get(1, 0)];
    let b = [p[0].get(1, 0), p[1].get(1, 0)];
    let g12 = m.component(1, 2).get(0, 0);
    let g22 = m.component(2, 2).get(0, 0);
    let scale = [a[0], a[1], b[0], b[1], g12, g22]
        .iter()
        .fold(1.0_f64, |s, v| s.max(v.abs()));
    let tol = 1e-12 * scale;
    let norm2 = |v: [f64; 2]| v[0] * v[0] + v[1] * v[1];
    if norm2(a).sqrt() <= tol {
        return Err(Error::RankCollapse {
            degree: 1,
            message: "initial curve has vanishing x-velocity".into(),
        });
    }
    if norm2(b).sqrt() <= tol {
        return Err(Error::RankCollapse {
            degree: 1,
            message: "initial curve has vanishing p-velocity".into(),
        });
    }
    let c0 = [g12 * b[0] / norm2(b), g12 * b[1] / norm2(b)];
    let d0 = [g12 * a[0] / norm2(a), g12 * a[1] / norm2(a)];
    let b_perp = [-b[1], b[0]];
    let a_perp = [-a[1], a[0]];
    let dot = |u: [f64; 2], v: [f64; 2]| u[0] * v[0] + u[1] * v[1];
    // (c0 + t1 b⊥) · (d0 + t2 a⊥) = g22.
    let alpha = dot(b_perp, a_perp);
    let beta = dot(b_perp, d0);
    let gamma = dot(c0, a_perp);
    let delta = dot(c0, d0) - g22;
    let (t1, t2) = solve_bilinear(alpha, beta, gamma, delta, tol).ok_or(Error::RankCollapse {
        degree: 1,
        message: "integral-element quadric has no admissible point over the initial curve".into(),
    })?;
    let c = [c0[0] + t1 * b_perp[0], c0[1] + t1 * b_perp[1]];
    let d = [d0[0] + t2 * a_perp[0], d0[1] + t2 * a_perp[1]];
    x[0].set(0, 1, c[0]);
    x[1].set(0, 1, c[1]);
    p[0].set(0, 1, d[0]);
    p[1].set(0, 1, d[1]);
    Ok(())
}

/// Deterministic solution of `α t1 t2 + β t1 + γ t2 + δ = 0`.
fn solve_bilinear(alpha: f64, beta: f64, gamma: f64, delta: f64, tol: f64) -> Option<(f64, f64)> {
    if delta.abs() <= tol {
        return Some((0.0, 0.0));
    }
    if gamma.abs() > tol {
        return Some((0.0, -delta / gamma));
    }
    if beta.abs() > tol {
        return Some((-delta / beta, 0.0));
    }
    if alpha.abs() > tol {
        // Diagonal branches t1 = ±t2.
        let ratio = -delta / alpha;
        if ratio >= 0.0 {
            let t = ratio.sqrt();
            return Some((t, t));
        }
        let t = (-ratio).sqrt();
        return Some((t, -t));
    }
    None
}

/// One affine window of the march (`d >= 3`): solves the degree-`d` and
/// degree-`d+1` coefficients jointly against the residual rows of degrees
/// `d−1` and `d`, then commits degree `d` (the upper half is re-solved at
/// the next step, when its own compatibility rows become available).
///
/// The rows are affine in the window unknowns, so the Newton loop below
/// terminates after one correction; the second pass only confirms the rows
/// vanished.
fn solve_window(
    m: &MetricJet,
    x: &mut [Jet2; 2],
    p: &mut [Jet2; 2],
    d: usize,
    data_order: usize,
) -> Result<DegreeRecord> {
    let mut unknowns = degree_unknowns(d, data_order);
    unknowns.extend(degree_unknowns(d + 1, data_order));
    let degrees = [d - 1, d];
    let g_scale = m
        .components()
        .iter()
        .fold(1.0_f64, |s, g| s.max(g.max_abs()));

    let mut record = DegreeRecord {
        degree: d,
        unknowns: unknowns.len(),
        rank: 0,
        consistency: f64::INFINITY,
    };
    for _iter in 0..4 {
        let res = residual_jets([&x[0], &x[1]], [&p[0], &p[1]], m)?;
        let rows = collect_rows(&res, &degrees);
        let row_norm = rows.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        record.consistency = row_norm;
        if row_norm <= 1e-12 * g_scale {
            break;
        }
        let mat = assemble_jacobian(x, p, &unknowns, &degrees)?;
        let neg_rows: Vec<f64> = rows.iter().map(|v| -v).collect();
        let outcome = solve_zero_gauge(&mat, &neg_rows, PIVOT_TOL);
        record.rank = outcome.rank;
        apply_delta(x, p, &unknowns, &outcome.solution);
    }
    if record.consistency > CONSISTENCY_TOL * g_scale {
        return Err(Error::ObstructionDetected {
            degree: d,
            residual: record.consistency,
        });
    }
    Ok(record)
}

/// The first window (`d = 2`) carries the only genuine nonlinearity of the
/// march beyond degree one: the degree-2 rows contain products of degree-2
/// coefficients, and the hidden constraint they induce is the quadric
/// relation on integral elements — a quadratic whose gradient vanishes at
/// the zero start, where Newton stalls.
///
/// The step therefore mirrors the degree-1 conic solve: first satisfy the
/// affine degree-1 rows, then restrict to the null-space line of that
/// system and solve the leftover degree-2 compatibility — a scalar
/// quadratic in the line parameter, obtained exactly by interpolation —
/// in closed form.
fn solve_window_two(
    m: &MetricJet,
    x: &mut [Jet2; 2],
    p: &mut [Jet2; 2],
    data_order: usize,
) -> Result<DegreeRecord> {
    let unknowns2 = degree_unknowns(2, data_order);
    let unknowns3 = degree_unknowns(3, data_order);
    let g_scale = m
        .components()
        .iter()
        .fold(1.0_f64, |s, g| s.max(g.max_abs()));

    // Stage A: affine rows of degree 1 in the degree-2 coefficients.
    let res = residual_jets([&x[0], &x[1]], [&p[0], &p[1]], m)?;
    let rows1 = collect_rows(&res, &[1]);
    let mat_a = assemble_jacobian(x, p, &unknowns2, &[1])?;
    let neg: Vec<f64> = rows1.iter().map(|v| -v).collect();
    let stage_a = solve_zero_gauge(&mat_a, &neg, PIVOT_TOL);
    if stage_a.consistency > CONSISTENCY_TOL * g_scale {
        return Err(Error::ObstructionDetected {
            degree: 2,
            residual: stage_a.consistency,
        });
    }
    apply_delta(x, p, &unknowns2, &stage_a.solution);

    // Stage B: the degree-2 rows after eliminating the degree-3 unknowns.
    // Along `v0 + t n` the leftover is exactly quadratic in `t`; three
    // samples give its coefficients.
    let leftover = |x: &mut [Jet2; 2], p: &mut [Jet2; 2]| -> Result<(Vec<f64>, Vec<f64>)> {
        let res = residual_jets([&x[0], &x[1]], [&p[0], &p[1]], m)?;
        let rows2 = collect_rows(&res, &[2]);
        let mat3 = assemble_jacobian(x, p, &unknowns3, &[2])?;
        let neg: Vec<f64> = rows2.iter().map(|v| -v).collect();
        let out = solve_zero_gauge(&mat3, &neg, PIVOT_TOL);
        let gap: Vec<f64> = mat3
            .mul_vec(&out.solution)
            .iter()
            .zip(&rows2)
            .map(|(mw, r)| mw + r)
            .collect();
        Ok((gap, out.solution))
    };

    let null = stage_a.null_basis.clone();
    let (record_rank, consistency, w3) = if null.is_empty() {
        let (gap, w) = leftover(x, p)?;
        let c = gap.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        (stage_a.rank, c, w)
    } else if null.len() == 1 {
        let n = &null[0];
        let sample = |t: f64, x: &mut [Jet2; 2], p: &mut [Jet2; 2]| -> Result<Vec<f64>> {
            let shift: Vec<f64> = n.iter().map(|v| v * t).collect();
            apply_delta(x, p, &unknowns2, &shift);
            let out = leftover(x, p).map(|(gap, _)| gap);
            let unshift: Vec<f64> = n.iter().map(|v| -v * t).collect();
            apply_delta(x, p, &unknowns2, &unshift);
            out
        };
        let l0 = sample(0.0, x, p)?;
        let l1 = sample(1.0, x, p)?;
        let lm = sample(-1.0, x, p)?;
        // gap_i(t) = a_i t^2 + b_i t + c_i, exactly.
        let quad: Vec<(f64, f64, f64)> = (0..l0.len())
            .map(|i| {
                (
                    0.5 * (l1[i] + lm[i]) - l0[i],
                    0.5 * (l1[i] - lm[i]),
                    l0[i],
                )
            })
            .collect();
        let mut candidates = vec![0.0];
        for &(a, b, c) in &quad {
            let scale = a.abs().max(b.abs()).max(c.abs());
            if scale <= 1e-13 * g_scale.max(1.0) {
                continue;
            }
            if a.abs() > 1e-12 * scale {
                let disc = b * b - 4.0 * a * c;
                if disc >= 0.0 {
                    let root = disc.sqrt();
                    candidates.push((-b + root) / (2.0 * a));
                    candidates.push((-b - root) / (2.0 * a));
                }
            } else if b.abs() > 1e-12 * scale {
                candidates.push(-c / b);
            }
        }
        let eval = |t: f64| -> f64 {
            quad.iter()
                .fold(0.0_f64, |m, &(a, b, c)| m.max((a * t * t + b * t + c).abs()))
        };
        let mut best = (f64::INFINITY, 0.0_f64);
        for &t in &candidates {
            let v = eval(t);
            if v < best.0 - 1e-15 || (v < best.0 + 1e-15 && t.abs() < best.1.abs()) {
                best = (v, t);
            }
        }
        let t_star = best.1;
        let shift: Vec<f64> = n.iter().map(|v| v * t_star).collect();
        apply_delta(x, p, &unknowns2, &shift);
        let (gap, w) = leftover(x, p)?;
        let c = gap.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        (stage_a.rank, c, w)
    } else {
        return Err(Error::RankCollapse {
            degree: 2,
            message: format!(
                "degree-2 null space has dimension {}, expected at most 1",
                null.len()
            ),
        });
    };

    if consistency > CONSISTENCY_TOL * g_scale {
        return Err(Error::ObstructionDetected {
            degree: 2,
            residual: consistency,
        });
    }
    // Seed the scratch degree with the eliminated estimate.
    apply_delta(x, p, &unknowns3, &w3);
    Ok(DegreeRecord {
        degree: 2,
        unknowns: unknowns2.len(),
        rank: record_rank,
        consistency,
    })
}


/// Reads the integral element tangent to the solved surface at the base
/// point: `G = Dp (Dx)^{-1}` and `p_ijk = ½ ∂G_ij/∂x^k`, everything
/// evaluated at the base point and symmetrized.
fn extract_element(m: &MetricJet, state: &SolveState) -> Result<IntegralElement> {
    let n1 = state.x[0].order() - 1;
    let dx = [
        [state.x[0].partial(1)?, state.x[0].partial(2)?],
        [state.x[1].partial(1)?, state.x[1].partial(2)?],
    ];
    let dp = [
        [state.p[0].partial(1)?, state.p[0].partial(2)?],
        [state.p[1].partial(1)?, state.p[1].partial(2)?],
    ];
    let det = dx[0][0].mul(&dx[1][1]) - dx[0][1].mul(&dx[1][0]);
    if det.get(0, 0).abs() <= 1e-12 {
        return Err(Error::SingularJacobian { det: det.get(0, 0) });
    }
    // (Dx)^{-1} rows indexed by y-direction a, columns by chart index j.
    let inv = [
        [dx[1][1].div(&det)?, dx[0][1].div(&det)?.scale(-1.0)],
        [dx[1][0].div(&det)?.scale(-1.0), dx[0][0].div(&det)?],
    ];
    // G~_{ij} = Σ_a ∂_a p_i (Dx^{-1})^a_j, as jets.
    let gt = |i: usize, j: usize| -> Jet2 {
        let mut total = Jet2::zero(n1);
        for a in 0..2 {
            total = total + dp[i][a].mul(&inv[a][j]);
        }
        total
    };
    let g_tilde = [[gt(0, 0), gt(0, 1)], [gt(1, 0), gt(1, 1)]];
    let g11 = g_tilde[0][0].get(0, 0);
    let g22 = g_tilde[1][1].get(0, 0);
    let g12 = 0.5 * (g_tilde[0][1].get(0, 0) + g_tilde[1][0].get(0, 0));
    let k0 = m.gauss_curvature()?.get(0, 0);
    let frame = FramePoint::new(g11, g12, g22, k0)?;

    // p_{ijk} = ½ ∂_a G~_{ij} (Dx^{-1})^a_k at the base point.
    let inv0 = [
        [inv[0][0].get(0, 0), inv[0][1].get(0, 0)],
        [inv[1][0].get(0, 0), inv[1][1].get(0, 0)],
    ];
    let mut v = [[[0.0f64; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let d1 = g_tilde[i][j].get(1, 0);
            let d2 = g_tilde[i][j].get(0, 1);
            for k in 0..2 {
                v[i][j][k] = 0.5 * (d1 * inv0[0][k] + d2 * inv0[1][k]);
            }
        }
    }
    let avg = |slots: &[(usize, usize, usize)]| -> f64 {
        slots.iter().map(|&(i, j, k)| v[i][j][k]).sum::<f64>() / slots.len() as f64
    };
    let p = SymCubicCoeffs([
        avg(&[(0, 0, 0)]),
        avg(&[(0, 0, 1), (0, 1, 0), (1, 0, 0)]),
        avg(&[(0, 1, 1), (1, 0, 1), (1, 1, 0)]),
        avg(&[(1, 1, 1)]),
    ]);
    Ok(IntegralElement { frame, p })
}

/// Antidifferentiates `df = p_i dx^i` with `f(0) = f0`.
///
/// Fails with `NotClosed` when the closedness residual `R0` of the inputs
/// is too large to integrate honestly. Returns the potential and the
/// mixed-partial consistency of the antiderivative.
pub fn recover_potential(x: [&Jet2; 2], p: [&Jet2; 2], f0: f64) -> Result<(Jet2, f64)> {
    let order = x[0].order();
    let n1 = order - 1;
    let mut w = [Jet2::zero(n1), Jet2::zero(n1)];
    for a in 0..2 {
        let mut total = Jet2::zero(n1);
        for i in 0..2 {
            total = total + p[i].truncated(n1).mul(&x[i].partial(a + 1)?);
        }
        w[a] = total;
    }
    let r0 = w[1].partial(1)? - w[0].partial(2)?;
    let scale = 1.0_f64.max(w[0].max_abs()).max(w[1].max_abs());
    let r0_max = r0.max_abs();
    if r0_max > SOLVE_RESIDUAL_TOL * scale {
        return Err(Error::NotClosed { residual: r0_max });
    }
    let mut f = Jet2::zero(order);
    f.set(0, 0, f0);
    let mut closedness = 0.0_f64;
    for deg in 1..=order {
        for bpow in 0..=deg {
            let apow = deg - bpow;
            if apow >= 1 {
                let value = w[0].get(apow - 1, bpow) / apow as f64;
                f.set(apow, bpow, value);
                if bpow >= 1 {
                    let alt = w[1].get(apow, bpow - 1) / bpow as f64;
                    closedness = closedness.max((value - alt).abs());
                }
            } else {
                f.set(0, bpow, w[1].get(0, bpow - 1) / bpow as f64);
            }
        }
    }
    Ok((f, closedness))
}

/// Runs the full solve: every degree, residual audit, potential recovery,
/// chart inversion.
pub fn solve(m: &MetricJet, data: &InitialData, order: usize) -> Result<HessianChart> {
    if order < 2 || m.order() + 1 < order {
        return Err(Error::OrderTooSmall {
            needed: order.max(2),
            have: m.order(),
        });
    }
    let state = solve_through(m, data, order, order)?;
    let res = residual_jets([&state.x[0], &state.x[1]], [&state.p[0], &state.p[1]], m)?;
    let g_scale = m
        .components()
        .iter()
        .fold(1.0_f64, |s, g| s.max(g.max_abs()));
    let mut residual_per_degree: [Vec<f64>; 4] = Default::default();
    let mut worst = 0.0_f64;
    for (e, r) in res.iter().enumerate() {
        residual_per_degree[e] = (0..order).map(|dg| r.max_abs_in_degree(dg)).collect();
        worst = worst.max(r.max_abs_through_degree(order - 1));
    }
    if worst > SOLVE_RESIDUAL_TOL * g_scale {
        return Err(Error::ObstructionDetected {
            degree: order,
            residual: worst,
        });
    }

    let (f, closedness) =
        recover_potential([&state.x[0], &state.x[1]], [&state.p[0], &state.p[1]], data.f0)?;

    let mut x1_dev = state.x[0].clone();
    x1_dev.set(0, 0, 0.0);
    let mut x2_dev = state.x[1].clone();
    x2_dev.set(0, 0, 0.0);
    let ymap = invert_map((&x1_dev, &x2_dev))?;
    let potential_x = f.compose((&ymap.0, &ymap.1))?;

    Ok(HessianChart {
        base_point: m.base_point(),
        order,
        x1: state.x[0].clone(),
        x2: state.x[1].clone(),
        p1: state.p[0].clone(),
        p2: state.p[1].clone(),
        f,
        ymap,
        potential_x,
        gauge_note: data.gauge_note.clone(),
        diagnostics: SolveDiagnostics {
            residual_per_degree,
            rank_profile: state.rank_profile,
            closedness,
        },
    })
}

impl HessianChart {
    /// Rebuilds a chart from stored coefficient tables (report files),
    /// recomputing the inverse map and composed potential.
    pub fn from_parts(
        base_point: [f64; 2],
        order: usize,
        x1: Jet2,
        x2: Jet2,
        p1: Jet2,
        p2: Jet2,
        f: Jet2,
    ) -> Result<HessianChart> {
        let mut x1_dev = x1.clone();
        x1_dev.set(0, 0, 0.0);
        let mut x2_dev = x2.clone();
        x2_dev.set(0, 0, 0.0);
        let ymap = invert_map((&x1_dev, &x2_dev))?;
        let potential_x = f.compose((&ymap.0, &ymap.1))?;
        Ok(HessianChart {
            base_point,
            order,
            x1,
            x2,
            p1,
            p2,
            f,
            ymap,
            potential_x,
            gauge_note: String::new(),
            diagnostics: SolveDiagnostics::default(),
        })
    }

    /// The integral element tangent to this chart's surface at the base point.
    pub fn element(&self, m: &MetricJet) -> Result<IntegralElement> {
        let state = SolveState {
            x: [self.x1.clone(), self.x2.clone()],
            p: [self.p1.clone(), self.p2.clone()],
            rank_profile: Vec::new(),
        };
        extract_element(m, &state)
    }
}

/// Independent verification of `g = Hess f` through the chart.
///
/// Inverts the chart map, composes the potential, takes its Hessian in
/// chart coordinates, and measures `g_ab − H_ij(x(y)) ∂_a x^i ∂_b x^j`
/// through order `N − 2`. None of the solver's own residual bookkeeping
/// enters here.
pub fn verify(m: &MetricJet, chart: &HessianChart) -> Result<VerifyReport> {
    let order = chart.order;
    if order < 2 {
        return Err(Error::OrderTooSmall {
            needed: 2,
            have: order,
        });
    }
    let n2 = order - 2;
    let mut x_dev = [chart.x1.clone(), chart.x2.clone()];
    x_dev[0].set(0, 0, 0.0);
    x_dev[1].set(0, 0, 0.0);
    let (y1, y2) = invert_map((&x_dev[0], &x_dev[1]))?;
    let big_f = chart.f.compose((&y1, &y2))?;
    let h = [
        [
            big_f.partial(1)?.partial(1)?,
            big_f.partial(1)?.partial(2)?,
        ],
        [
            big_f.partial(2)?.partial(1)?,
            big_f.partial(2)?.partial(2)?,
        ],
    ];
    // H_ij back in y-coordinates.
    let mut h_y = [[Jet2::zero(n2), Jet2::zero(n2)], [Jet2::zero(n2), Jet2::zero(n2)]];
    for i in 0..2 {
        for j in 0..2 {
            h_y[i][j] = h[i][j].compose((&x_dev[0], &x_dev[1]))?;
        }
    }
    let dx = [
        [chart.x1.partial(1)?, chart.x1.partial(2)?],
        [chart.x2.partial(1)?, chart.x2.partial(2)?],
    ];
    let mut per_degree = vec![0.0_f64; n2 + 1];
    for (a, bpair) in [(0usize, 0usize), (0, 1), (1, 1)] {
        let mut recon = Jet2::zero(n2);
        for i in 0..2 {
            for j in 0..2 {
                recon = recon + h_y[i][j].mul(&dx[i][a]).mul(&dx[j][bpair]);
            }
        }
        let resid = m.component(a + 1, bpair + 1).truncated(n2) - recon;
        for (dg, slot) in per_degree.iter_mut().enumerate() {
            *slot = slot.max(resid.max_abs_in_degree(dg));
        }
    }
    let max_residual = per_degree.iter().fold(0.0_f64, |m, v| m.max(*v));
    Ok(VerifyReport {
        per_degree,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::{integral_element_residual, Classification};

    #[test]
    fn default_data_for_flat_metric() {
        let m = MetricJet::euclidean(6);
        let data = default_initial_data(&m, 6, None).unwrap();
        // x1 = t, x2 = 0, p1 = t (g11 = 1 integrates to t), p2 = c t.
        assert_eq!(data.x1_curve, Jet1::variable(6));
        assert_eq!(data.x2_curve, Jet1::zero(6));
        assert!(data
            .p1_curve
            .sub(&Jet1::variable(6))
            .coeffs()
            .iter()
            .all(|c| c.abs() < 1e-14));
        let c = data.p2_curve.get(1);
        assert!(c != 0.0);
        assert!(data.p2_curve.sub(&Jet1::variable(6).scale(c)).coeffs().iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn default_data_for_round_metric_integrates_g11() {
        let m = MetricJet::round_sphere(8);
        let data = default_initial_data(&m, 8, None).unwrap();
        // p1' must reproduce g11(t, 0) = (1 + t^2/4)^{-2} since x2 = 0.
        let p1d = data.p1_curve.derivative().unwrap();
        let g11_line = m.component(1, 1).restrict_to_axis();
        for k in 0..=7 {
            assert!((p1d.get(k) - g11_line.get(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_metric_is_rejected_before_data() {
        let y1 = Jet2::variable(1, 6);
        let m = MetricJet::from_jets([0.0, 0.0], Jet2::zero(6), y1, Jet2::zero(6));
        assert!(matches!(
            default_initial_data(&m, 6, None),
            Err(Error::NondegeneracyFailure { .. })
        ));
    }

    #[test]
    fn validate_flat_default_passes_with_zero_cubic() {
        let m = MetricJet::euclidean(6);
        let data = default_initial_data(&m, 6, None).unwrap();
        let diag = validate_initial_data(&m, &data).unwrap();
        assert!(diag.constraint_residual < 1e-12);
        assert!(diag.non_ordinary);
        assert_eq!(diag.cubic_value, 0.0);
        assert!(integral_element_residual(&diag.element).abs() < 1e-10);
    }

    #[test]
    fn validate_round_default_reports_cubic() {
        let m = MetricJet::round_sphere(8);
        let data = default_initial_data(&m, 8, None).unwrap();
        let diag = validate_initial_data(&m, &data).unwrap();
        assert!(!diag.non_ordinary);
        assert!(diag.cubic_value.abs() > CHARACTERISTIC_TOL);
    }

    #[test]
    fn perturbed_p1_violates_constraint() {
        let m = MetricJet::euclidean(6);
        let mut data = default_initial_data(&m, 6, None).unwrap();
        data.p1_curve = data.p1_curve.add(&Jet1::variable(6));
        assert!(matches!(
            validate_initial_data(&m, &data),
            Err(Error::ConstraintViolated(_))
        ));
    }

    /// Finds gauge data whose curve direction lies on the characteristic
    /// cubic by scanning and bisecting the cubic value, then checks the gate.
    #[test]
    fn engineered_characteristic_data_is_rejected() {
        let m = MetricJet::round_sphere(8);
        let order = 8;
        let value_at = |beta: f64| -> Option<f64> {
            let x2 = Jet1::variable(order).scale(beta);
            let p2 = Jet1::variable(order);
            let data = build_data(&m, order, Jet1::variable(order), x2, p2, "probe".into()).ok()?;
            let state = solve_through(&m, &data, order, 2).ok()?;
            let element = extract_element(&m, &state).ok()?;
            let cubic = characteristic_cubic(&element);
            Some(cubic.eval(1.0, beta))
        };
        // Scan for a sign change of the cubic value along the gauge family.
        let mut bracket = None;
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=60 {
            let beta = -3.0 + i as f64 * 0.1;
            if let Some(v) = value_at(beta) {
                if let Some((pb, pv)) = prev {
                    if pv.signum() != v.signum() {
                        bracket = Some((pb, beta));
                        break;
                    }
                }
                prev = Some((beta, v));
            }
        }
        let (mut lo, mut hi) = bracket.expect("no characteristic direction in the scanned family");
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            let vm = value_at(mid).unwrap();
            if vm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if value_at(lo).unwrap().signum() == vm.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let beta = 0.5 * (lo + hi);
        let data = build_data(
            &m,
            order,
            Jet1::variable(order),
            Jet1::variable(order).scale(beta),
            Jet1::variable(order),
            "characteristic probe".into(),
        )
        .unwrap();
        assert!(matches!(
            validate_initial_data(&m, &data),
            Err(Error::CharacteristicInitialData(_))
        ));
    }

    #[test]
    fn flat_solve_is_exact_and_linear() {
        let m = MetricJet::euclidean(6);
        let data = default_initial_data(&m, 6, None).unwrap();
        let chart = solve(&m, &data, 6).unwrap();
        let res = residual_jets(
            [&chart.x1, &chart.x2],
            [&chart.p1, &chart.p2],
            &m,
        )
        .unwrap();
        for r in &res {
            assert!(r.max_abs() <= 1e-12);
        }
        // Constant metric: chart is affine, so every degree >= 2 vanishes.
        for dg in 2..=6 {
            assert!(chart.x1.max_abs_in_degree(dg) < 1e-12);
            assert!(chart.x2.max_abs_in_degree(dg) < 1e-12);
        }
        // Potential is exactly quadratic.
        for dg in 3..=6 {
            assert!(chart.potential_x.max_abs_in_degree(dg) < 1e-12);
        }
    }

    #[test]
    fn round_metric_solve_passes_resubstitution() {
        let m = MetricJet::round_sphere(8);
        let data = default_initial_data(&m, 8, None).unwrap();
        let chart = solve(&m, &data, 8).unwrap();
        let res = residual_jets(
            [&chart.x1, &chart.x2],
            [&chart.p1, &chart.p2],
            &m,
        )
        .unwrap();
        for r in &res {
            assert!(r.max_abs_through_degree(7) <= 1e-8, "residual {:e}", r.max_abs_through_degree(7));
        }
        // The solved surface's tangent element is a genuine integral element.
        let e = chart.element(&m).unwrap();
        assert!(integral_element_residual(&e).abs() < 1e-8);
        assert_eq!(
            crate::eds::classify_element(&e).unwrap(),
            Classification::Hyperbolic
        );
    }

    #[test]
    fn distinct_gauges_give_distinct_charts() {
        let m = MetricJet::round_sphere(8);
        let d1 = default_initial_data(&m, 8, None).unwrap();
        let gauge = (Jet1::zero(8), Jet1::variable(8).scale(-1.0));
        let d2 = default_initial_data(&m, 8, Some(gauge)).unwrap();
        let c1 = solve(&m, &d1, 8).unwrap();
        let c2 = solve(&m, &d2, 8).unwrap();
        let mut max_diff = 0.0_f64;
        for (a, b) in [(&c1.p2, &c2.p2), (&c1.x1, &c2.x1), (&c1.f, &c2.f)] {
            for ((_, _, ca), (_, _, cb)) in a.iter().zip(b.iter()) {
                max_diff = max_diff.max((ca - cb).abs());
            }
        }
        assert!(max_diff > 1e-3, "gauges produced identical charts");
        assert!(verify(&m, &c1).unwrap().max_residual <= 1e-7);
        assert!(verify(&m, &c2).unwrap().max_residual <= 1e-7);
    }

    #[test]
    fn recover_potential_radial_case() {
        // x = y, p = y: f = (y1^2 + y2^2)/2.
        let x = [Jet2::variable(1, 4), Jet2::variable(2, 4)];
        let p = x.clone();
        let (f, closed) = recover_potential([&x[0], &x[1]], [&p[0], &p[1]], 0.0).unwrap();
        let mut expect = Jet2::zero(4);
        expect.set(2, 0, 0.5);
        expect.set(0, 2, 0.5);
        assert!(f.approx_eq(&expect, 1e-14));
        assert!(closed < 1e-14);
    }

    #[test]
    fn recover_potential_mixed_case() {
        // x = y, p = (y2, y1): df = y2 dy1 + y1 dy2 so f = y1 y2.
        let x = [Jet2::variable(1, 4), Jet2::variable(2, 4)];
        let p = [Jet2::variable(2, 4), Jet2::variable(1, 4)];
        let (f, _) = recover_potential([&x[0], &x[1]], [&p[0], &p[1]], 0.0).unwrap();
        let mut expect = Jet2::zero(4);
        expect.set(1, 1, 1.0);
        assert!(f.approx_eq(&expect, 1e-14));
    }

    #[test]
    fn recover_potential_rejects_non_closed_inputs() {
        // p = (y2, -y1) gives dp ∧ dx = -2 dy1∧dy2.
        let x = [Jet2::variable(1, 4), Jet2::variable(2, 4)];
        let p = [Jet2::variable(2, 4), Jet2::variable(1, 4).scale(-1.0)];
        assert!(matches!(
            recover_potential([&x[0], &x[1]], [&p[0], &p[1]], 0.0),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn verify_flat_chart_exactly() {
        let m = MetricJet::euclidean(6);
        let mut f = Jet2::zero(6);
        f.set(2, 0, 0.5);
        f.set(0, 2, 0.5);
        let chart = HessianChart::from_parts(
            [0.0, 0.0],
            6,
            Jet2::variable(1, 6),
            Jet2::variable(2, 6),
            Jet2::variable(1, 6),
            Jet2::variable(2, 6),
            f,
        )
        .unwrap();
        let report = verify(&m, &chart).unwrap();
        assert!(report.max_residual <= 1e-14);
    }

    #[test]
    fn verify_detects_cubic_perturbation_of_potential() {
        let m = MetricJet::euclidean(6);
        let mut f = Jet2::zero(6);
        f.set(2, 0, 0.5);
        f.set(0, 2, 0.5);
        f.set(3, 0, 1.0); // adds 6 y1 to the Hessian's 11-entry
        let chart = HessianChart::from_parts(
            [0.0, 0.0],
            6,
            Jet2::variable(1, 6),
            Jet2::variable(2, 6),
            Jet2::variable(1, 6),
            Jet2::variable(2, 6),
            f,
        )
        .unwrap();
        let report = verify(&m, &chart).unwrap();
        assert!(report.per_degree[1] > 1.0);
    }

    #[test]
    fn round_metric_end_to_end() {
        let m = MetricJet::round_sphere(8);
        let data = default_initial_data(&m, 8, None).unwrap();
        let chart = solve(&m, &data, 8).unwrap();
        let report = verify(&m, &chart).unwrap();
        assert!(
            report.max_residual <= 1e-7,
            "verification residual {:e}",
            report.max_residual
        );
    }

    #[test]
    fn hyperbolic_metric_end_to_end() {
        let m = MetricJet::poincare_upper_half(8);
        let data = default_initial_data(&m, 8, None).unwrap();
        let chart = solve(&m, &data, 8).unwrap();
        let report = verify(&m, &chart).unwrap();
        assert!(report.max_residual <= 1e-7);
    }
}
