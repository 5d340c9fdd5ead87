//! Exact numerics over rational realizations: rigidity matrices,
//! equilibrium stresses, stress matrices and equivalent frameworks.
//!
//! Genericity is emulated by random integer coordinates; every claim that
//! depends on it holds with high probability only.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::LoopedSimpleGraph;
use crate::linalg::{self, Matrix};
use crate::matroid;

pub type Q = BigRational;

fn q_int(x: i128) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Point map `p` and loop-normal map `q`, keyed by vertex and loop id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub d: usize,
    pub p: BTreeMap<String, Vec<Q>>,
    pub q: BTreeMap<String, Vec<Q>>,
}

impl Realization {
    /// Realization from integer coordinates.
    pub fn from_integers(d: usize, p: &[(&str, &[i64])], q: &[(&str, &[i64])]) -> Self {
        let conv = |v: &[i64]| v.iter().map(|&x| q_int(x as i128)).collect::<Vec<_>>();
        Self {
            d,
            p: p.iter().map(|(k, v)| (k.to_string(), conv(v))).collect(),
            q: q.iter().map(|(k, v)| (k.to_string(), conv(v))).collect(),
        }
    }

    fn point(&self, g: &LoopedSimpleGraph, v: usize) -> Result<&[Q]> {
        let id = g.vertex_id(v);
        let x = self
            .p
            .get(id)
            .ok_or_else(|| Error::UnboundElement(format!("vertex {id}")))?;
        if x.len() != self.d {
            return Err(Error::DimensionMismatch(format!("p({id}) has length {}", x.len())));
        }
        Ok(x)
    }

    fn normal(&self, id: &str) -> Result<&[Q]> {
        let x = self
            .q
            .get(id)
            .ok_or_else(|| Error::UnboundElement(format!("loop {id}")))?;
        if x.len() != self.d {
            return Err(Error::DimensionMismatch(format!("q({id}) has length {}", x.len())));
        }
        Ok(x)
    }

    /// Checks that every vertex and loop is bound and loop normals are nonzero.
    pub fn check(&self, g: &LoopedSimpleGraph) -> Result<()> {
        for v in 0..g.vertex_count() {
            self.point(g, v)?;
        }
        for (id, _) in g.loops() {
            if self.normal(id)?.iter().all(Zero::is_zero) {
                return Err(Error::NonzeroRequired(id.clone()));
            }
        }
        Ok(())
    }
}

/// Uniform integer coordinates in `[-(2^bits - 1), 2^bits - 1]`, seeded.
/// Zero loop normals are redrawn unless `bits = 0`, where everything is zero
/// and a graph with loops is rejected.
pub fn sample_realization(g: &LoopedSimpleGraph, d: usize, seed: u64, bits: u32) -> Result<Realization> {
    if d == 0 {
        return Err(Error::DimensionMismatch("d must be at least 1".into()));
    }
    if bits > 120 {
        return Err(Error::PreconditionFailed("bits must be at most 120".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound: i128 = (1i128 << bits) - 1;
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Q> {
        (0..d).map(|_| q_int(rng.gen_range(-bound..=bound))).collect()
    };
    let p = g
        .vertices()
        .iter()
        .map(|v| (v.clone(), draw(&mut rng)))
        .collect();
    let mut q = BTreeMap::new();
    for (id, _) in g.loops() {
        let mut x = draw(&mut rng);
        if bits == 0 {
            return Err(Error::NonzeroRequired(id.clone()));
        }
        while x.iter().all(Zero::is_zero) {
            x = draw(&mut rng);
        }
        q.insert(id.clone(), x);
    }
    Ok(Realization { d, p, q })
}

/// Rows indexed by `E ∪ L` in element order, `d|V|` columns.
pub fn rigidity_matrix(g: &LoopedSimpleGraph, r: &Realization) -> Result<Matrix> {
    r.check(g)?;
    let d = r.d;
    let cols = d * g.vertex_count();
    let mut rows = Vec::with_capacity(g.element_count());
    for &(a, b) in g.edges() {
        let (pa, pb) = (r.point(g, a)?, r.point(g, b)?);
        let mut row = vec![Q::zero(); cols];
        for k in 0..d {
            let diff = &pa[k] - &pb[k];
            row[a * d + k] = diff.clone();
            row[b * d + k] = -diff;
        }
        rows.push(row);
    }
    for (id, at) in g.loops() {
        let qn = r.normal(id)?;
        let mut row = vec![Q::zero(); cols];
        for k in 0..d {
            row[at * d + k] = qn[k].clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn matrix_rank(m: &Matrix) -> usize {
    linalg::rank(m)
}

pub fn is_infinitesimally_rigid(g: &LoopedSimpleGraph, r: &Realization) -> Result<bool> {
    let m = rigidity_matrix(g, r)?;
    Ok(matrix_rank(&m) == r.d * g.vertex_count())
}

/// Rank of the rigidity matrix over `Z_p` at random coordinates, maximized
/// over `trials` independent draws. Never exceeds the generic rank.
pub fn generic_rank_prime(g: &LoopedSimpleGraph, d: usize, seed: u64, trials: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut best = 0;
    for _ in 0..trials.max(2) {
        let p: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0..linalg::PRIME)).collect())
            .collect();
        let mut rows = Vec::new();
        for &(a, b) in g.edges() {
            let mut row = vec![0u64; d * n];
            for k in 0..d {
                let diff = (p[a][k] + linalg::PRIME - p[b][k]) % linalg::PRIME;
                row[a * d + k] = diff;
                row[b * d + k] = (linalg::PRIME - diff) % linalg::PRIME;
            }
            rows.push(row);
        }
        for (_, at) in g.loops() {
            let mut row = vec![0u64; d * n];
            for k in 0..d {
                row[at * d + k] = rng.gen_range(0..linalg::PRIME);
            }
            rows.push(row);
        }
        best = best.max(linalg::rank_mod_p(rows));
    }
    best
}

/// `ω` on edges and `λ` on loops, in the graph's element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stress {
    pub omega: Vec<Q>,
    pub lambda: Vec<Q>,
}

impl Stress {
    pub fn zero(g: &LoopedSimpleGraph) -> Self {
        Self {
            omega: vec![Q::zero(); g.edge_count()],
            lambda: vec![Q::zero(); g.loop_count()],
        }
    }

    fn from_vector(g: &LoopedSimpleGraph, v: Vec<Q>) -> Self {
        let mut v = v;
        let lambda = v.split_off(g.edge_count());
        Self { omega: v, lambda }
    }

    pub fn as_vector(&self) -> Vec<Q> {
        self.omega.iter().chain(&self.lambda).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.as_vector().iter().all(Zero::is_zero)
    }
}

/// Exact basis of the cokernel of the rigidity matrix, primitive integer
/// vectors with positive leading entry.
pub fn stress_basis(g: &LoopedSimpleGraph, r: &Realization) -> Result<Vec<Stress>> {
    let m = rigidity_matrix(g, r)?;
    let cols = r.d * g.vertex_count();
    Ok(linalg::left_null_space(&m, cols)
        .into_iter()
        .map(|v| Stress::from_vector(g, v.into_iter().map(Q::from_integer).collect()))
        .collect())
}

/// `true` if `(ω, λ) R = 0`.
pub fn is_equilibrium(g: &LoopedSimpleGraph, r: &Realization, s: &Stress) -> Result<bool> {
    let m = rigidity_matrix(g, r)?;
    let v = s.as_vector();
    let cols = r.d * g.vertex_count();
    Ok((0..cols).all(|j| {
        m.iter()
            .zip(&v)
            .map(|(row, x)| &row[j] * x)
            .fold(Q::zero(), |a, b| a + b)
            .is_zero()
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressMatrix {
    /// `|V| × |V|`, off-diagonal `-ω_ij`, zero row sums.
    pub omega: Matrix,
    /// `|V| × |L|`, entry `λ_j` when loop `j` sits at vertex `i`.
    pub lambda: Matrix,
    /// `d × |V|` matrix `Π(p) Ω + Π(q) Λᵀ`.
    pub residual: Matrix,
    pub rank: usize,
}

pub fn stress_matrix(g: &LoopedSimpleGraph, r: &Realization, s: &Stress) -> Result<StressMatrix> {
    r.check(g)?;
    let n = g.vertex_count();
    if s.omega.len() != g.edge_count() || s.lambda.len() != g.loop_count() {
        return Err(Error::DimensionMismatch("stress does not match the graph".into()));
    }
    let mut omega = vec![vec![Q::zero(); n]; n];
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        let w = &s.omega[k];
        omega[a][b] -= w;
        omega[b][a] -= w;
        omega[a][a] += w;
        omega[b][b] += w;
    }
    let mut lambda = vec![vec![Q::zero(); g.loop_count()]; n];
    for (j, (_, at)) in g.loops().iter().enumerate() {
        lambda[*at][j] = s.lambda[j].clone();
    }
    let mut residual = vec![vec![Q::zero(); n]; r.d];
    for (k, row) in residual.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            let mut acc = Q::zero();
            for (j, om) in omega.iter().enumerate() {
                if !om[i].is_zero() {
                    acc += &r.point(g, j)?[k] * &om[i];
                }
            }
            for (j, (id, _)) in g.loops().iter().enumerate() {
                if !lambda[i][j].is_zero() {
                    acc += &r.normal(id)?[k] * &lambda[i][j];
                }
            }
            *cell = acc;
        }
    }
    let rank = linalg::rank(&omega);
    Ok(StressMatrix {
        omega,
        lambda,
        residual,
        rank,
    })
}

fn omega_rank(g: &LoopedSimpleGraph, s: &Stress) -> usize {
    let n = g.vertex_count();
    let mut omega = vec![vec![Q::zero(); n]; n];
    for (k, &(a, b)) in g.edges().iter().enumerate() {
        let w = &s.omega[k];
        omega[a][b] -= w;
        omega[b][a] -= w;
        omega[a][a] += w;
        omega[b][b] += w;
    }
    linalg::rank(&omega)
}

/// Random combinations of the stress basis with coefficients in
/// `[-2^16, 2^16]`, keeping the one of largest `rank Ω`. Stops early at
/// `|V| - 1`.
pub fn max_rank_stress(
    g: &LoopedSimpleGraph,
    r: &Realization,
    trials: usize,
    seed: u64,
) -> Result<(Stress, usize)> {
    let basis = stress_basis(g, r)?;
    let full = g.vertex_count().saturating_sub(1);
    if basis.is_empty() {
        return Ok((Stress::zero(g), 0));
    }
    if basis.len() == 1 {
        let rk = omega_rank(g, &basis[0]);
        return Ok((basis[0].clone(), rk));
    }
    let vectors: Vec<Vec<Q>> = basis.iter().map(Stress::as_vector).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Stress, usize)> = None;
    for _ in 0..trials.max(1) {
        let coeffs: Vec<Q> = (0..vectors.len())
            .map(|_| q_int(rng.gen_range(-(1i128 << 16)..=(1i128 << 16))))
            .collect();
        let mut combo = vec![Q::zero(); vectors[0].len()];
        for (c, v) in coeffs.iter().zip(&vectors) {
            for (x, y) in combo.iter_mut().zip(v) {
                *x += c * y;
            }
        }
        let s = Stress::from_vector(g, combo);
        let rk = omega_rank(g, &s);
        if best.as_ref().map_or(true, |b| rk > b.1) {
            best = Some((s, rk));
        }
        if rk >= full {
            break;
        }
    }
    Ok(best.expect("at least one trial"))
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t)
}

/// Exact equivalence: equal edge lengths and equal `p(v)·q(ℓ)` on loops,
/// with identical loop normals.
pub fn verify_equivalent(g: &LoopedSimpleGraph, a: &Realization, b: &Realization) -> bool {
    if a.d != b.d || a.q != b.q || a.check(g).is_err() || b.check(g).is_err() {
        return false;
    }
    let sq = |r: &Realization, u: usize, v: usize| -> Q {
        let (pu, pv) = (&r.p[g.vertex_id(u)], &r.p[g.vertex_id(v)]);
        let diff: Vec<Q> = pu.iter().zip(pv).map(|(x, y)| x - y).collect();
        dot(&diff, &diff)
    };
    g.edges().iter().all(|&(u, v)| sq(a, u, v) == sq(b, u, v))
        && g.loops().iter().all(|(id, at)| {
            let v = g.vertex_id(*at);
            dot(&a.p[v], &a.q[id]) == dot(&b.p[v], &b.q[id])
        })
}

/// Reflection of `x` in the line through `a` and `b` in the plane.
pub fn reflect(x: &[Q], a: &[Q], b: &[Q]) -> Vec<Q> {
    let d = [&b[0] - &a[0], &b[1] - &a[1]];
    let n = &d[0] * &d[0] + &d[1] * &d[1];
    let two = q_int(2);
    let m = [
        [&two * &d[0] * &d[0] / &n - Q::one(), &two * &d[0] * &d[1] / &n],
        [&two * &d[0] * &d[1] / &n, &two * &d[1] * &d[1] / &n - Q::one()],
    ];
    let y = [&x[0] - &a[0], &x[1] - &a[1]];
    (0..2)
        .map(|i| &a[i] + &m[i][0] * &y[0] + &m[i][1] * &y[1])
        .collect()
}

/// All `2^b(G)` frameworks equivalent to `r`, starting with `r` itself.
/// Each loopless component of each `G - {u, v}` is either kept or reflected
/// in the current line through `u` and `v`.
pub fn enumerate_equivalent(g: &LoopedSimpleGraph, r: &Realization) -> Result<Vec<Realization>> {
    if r.d != 2 {
        return Err(Error::PreconditionFailed("enumeration needs d = 2".into()));
    }
    r.check(g)?;
    if !matroid::is_rigid(g) {
        return Err(Error::PreconditionFailed("graph is not rigid".into()));
    }
    if !matroid::connected_nonempty(g) {
        return Err(Error::PreconditionFailed("graph is not M_lc-connected".into()));
    }
    let n = g.vertex_count();
    let mut items: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for c in g.loopless_components_after_indices(&[u, v]) {
                items.push((u, v, c));
            }
        }
    }
    // outer sides first so nested sides follow their hinge
    items.sort_by(|x, y| y.2.len().cmp(&x.2.len()));
    if items.len() > 20 {
        return Err(Error::PreconditionFailed(format!("b(G) = {} is too large to enumerate", items.len())));
    }
    let base: Vec<Vec<Q>> = (0..n).map(|v| r.p[g.vertex_id(v)].clone()).collect();
    let mut out = Vec::with_capacity(1 << items.len());
    let mut seen = HashSet::new();
    for mask in 0u32..(1u32 << items.len()) {
        let mut pos = base.clone();
        for (k, (u, v, side)) in items.iter().enumerate() {
            if mask >> k & 1 == 0 {
                continue;
            }
            if pos[*u] == pos[*v] {
                return Err(Error::DegenerateLine(
                    g.vertex_id(*u).into(),
                    g.vertex_id(*v).into(),
                ));
            }
            let (a, b) = (pos[*u].clone(), pos[*v].clone());
            for &x in side {
                pos[x] = reflect(&pos[x], &a, &b);
            }
        }
        let rr = Realization {
            d: 2,
            p: (0..n).map(|v| (g.vertex_id(v).to_string(), pos[v].clone())).collect(),
            q: r.q.clone(),
        };
        debug_assert!(verify_equivalent(g, r, &rr));
        if !seen.insert(pos) {
            return Err(Error::PreconditionFailed(
                "reflections coincide; the realization is not generic".into(),
            ));
        }
        out.push(rr);
    }
    Ok(out)
}
