//! Exact linear algebra: dense rational matrices, and sparse matrices over `Q[u, u⁻¹]`
//! whose nonzero entries admit a potential grading `M_ij = r_ij · u^(p_i − q_j)`.
//!
//! A graded matrix is equivalent over `Q(u)` to the rational matrix `r_ij`, so rank and
//! nullspace reduce to rational elimination inside each connected block.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{LaurentScalar, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * r).collect(),
        }
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = &self.data[r * self.cols + j] * &inv;
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let pv = &self.data[r * self.cols + j];
                    if pv.is_zero() {
                        continue;
                    }
                    let delta = &f * pv;
                    self.data[i * self.cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column, in RREF-dual form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.get(r, free);
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(xI − A)`, coefficients from constant term upward.
    pub fn charpoly(&self) -> Vec<Rational> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        // similarity reduction to upper Hessenberg form
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            for j in m + 1..n {
                if h.get(j, m - 1).is_zero() {
                    continue;
                }
                let t = h.get(j, m - 1) / h.get(m, m - 1);
                for c in 0..n {
                    let d = &t * h.get(m, c);
                    h.data[j * n + c] -= d;
                }
                for r in 0..n {
                    let d = &t * h.get(r, j);
                    h.data[r * n + m] += d;
                }
            }
        }
        // p_k for the leading k×k block, 1-indexed recurrence
        let hh = |i: usize, j: usize| h.get(i - 1, j - 1).clone();
        let mut p: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for m in 1..=n {
            let mut next = vec![Rational::zero(); m + 1];
            for (d, c) in p[m - 1].iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * hh(m, m);
            }
            let mut prod = Rational::one();
            for i in 1..m {
                prod *= hh(m - i + 1, m - i);
                let coef = hh(m - i, m) * &prod;
                if coef.is_zero() {
                    continue;
                }
                for (d, c) in p[m - i - 1].iter().enumerate() {
                    next[d] -= c * &coef;
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}

/// Product `Π (x − r)` as coefficients from the constant term upward.
pub fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (d, c) in p.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * r;
        }
        p = next;
    }
    p
}

pub fn format_poly(p: &[Rational]) -> String {
    let mut out = String::new();
    for (d, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = crate::ring::rational::fmt_rational(&mag);
        match d {
            0 => out.push_str(&coeff),
            _ => {
                if !mag.is_one() {
                    out.push_str(&coeff);
                    out.push('*');
                }
                out.push('x');
                if d > 1 {
                    out.push_str(&format!("^{d}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Approximate complex roots of a monic polynomial by Durand–Kerner iteration.
fn approximate_roots(monic: &[f64]) -> Vec<(f64, f64)> {
    let n = monic.len() - 1;
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let t = 0.4 + std::f64::consts::TAU * j as f64 / n as f64;
            (bound * t.cos(), bound * t.sin())
        })
        .collect();
    let cm = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut val = (1.0, 0.0);
            for c in monic[..n].iter().rev() {
                val = cm(val, z[i]);
                val.0 += c;
            }
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den = cm(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let d2 = den.0 * den.0 + den.1 * den.1;
            if d2 == 0.0 {
                z[i].0 += 1e-3 * bound;
                continue;
            }
            let step = ((val.0 * den.0 + val.1 * den.1) / d2, (val.1 * den.0 - val.0 * den.1) / d2);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            moved = moved.max(step.0.hypot(step.1) / (1.0 + z[i].0.hypot(z[i].1)));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn deflate(poly: &[Rational], r: &Rational) -> Vec<Rational> {
    let deg = poly.len() - 1;
    let mut q = vec![Rational::zero(); deg];
    let mut carry = Rational::zero();
    for d in (0..deg).rev() {
        carry = &poly[d + 1] + &carry * r;
        q[d] = carry.clone();
    }
    q
}

/// Rational roots with multiplicity, or `None` when the polynomial does not split over Q.
///
/// After rescaling to a monic integer polynomial every rational root is an integer, so
/// floating-point root approximations only propose candidates; each root is confirmed exactly.
pub fn rational_roots(p: &[Rational]) -> Option<Vec<Rational>> {
    let mut poly: Vec<Rational> = p.to_vec();
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        roots.push(Rational::zero());
        poly.remove(0);
    }
    if poly.len() <= 1 {
        return Some(roots);
    }
    let lead = poly.last().unwrap().clone();
    let monic: Vec<Rational> = poly.iter().map(|c| c / &lead).collect();
    let scale = monic.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale_q = Rational::from_integer(scale);
    // y = scale·x turns the monic polynomial into one with integer coefficients
    let n = monic.len() - 1;
    let mut ipoly: Vec<Rational> = (0..=n).map(|i| &monic[i] * scale_q.pow((n - i) as i32)).collect();
    for _ in 0..=n {
        if ipoly.len() == 1 {
            break;
        }
        let mut found = false;
        let f: Vec<f64> = ipoly.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        if f.iter().any(|c| !c.is_finite()) {
            return None;
        }
        for (re, _) in approximate_roots(&f) {
            let centre = re.round();
            for off in [0.0, -1.0, 1.0, -2.0, 2.0] {
                let Some(cand) = BigInt::from_f64(centre + off) else { continue };
                let r = Rational::from_integer(cand);
                while ipoly.len() > 1 && eval_poly(&ipoly, &r).is_zero() {
                    roots.push(&r / &scale_q);
                    ipoly = deflate(&ipoly, &r);
                    found = true;
                }
            }
        }
        if !found {
            break;
        }
    }
    (ipoly.len() == 1).then_some(roots)
}

/// Sparse matrix over `Q[u, u⁻¹]`.
#[derive(Clone, Debug, Default)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), LaurentScalar>,
}

impl LaurentMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: &LaurentScalar) {
        assert!(i < self.rows && j < self.cols);
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_default();
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentScalar)> {
        self.entries.iter().map(|((i, j), v)| (*i, *j, v))
    }

    /// Builds the matrix whose columns are the given sparse vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<(usize, LaurentScalar)>]) -> Self {
        let mut m = Self::new(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.add_entry(*i, j, v);
            }
        }
        m
    }
}

/// One connected block of a graded matrix.
struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
    col_pot: Vec<i32>,
    mat: QMatrix,
}

fn graded_blocks(m: &LaurentMatrix) -> Result<Vec<Block>> {
    let mut row_adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); m.rows];
    let mut col_adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); m.cols];
    let mut coeff: HashMap<(usize, usize), Rational> = HashMap::new();
    for (i, j, v) in m.entries() {
        let (e, c) = v.as_monomial().ok_or(Error::NotGraded)?;
        row_adj[i].push((j, e));
        col_adj[j].push((i, e));
        coeff.insert((i, j), c.clone());
    }
    let mut row_pot: Vec<Option<i32>> = vec![None; m.rows];
    let mut col_pot: Vec<Option<i32>> = vec![None; m.cols];
    let mut blocks = Vec::new();
    for start in 0..m.cols {
        if col_pot[start].is_some() {
            continue;
        }
        col_pot[start] = Some(0);
        let mut rows = Vec::new();
        let mut cols = vec![start];
        // node: (is_row, index)
        let mut queue = VecDeque::from([(false, start)]);
        while let Some((is_row, idx)) = queue.pop_front() {
            if is_row {
                let p = row_pot[idx].unwrap();
                for &(j, e) in &row_adj[idx] {
                    let want = p - e;
                    match col_pot[j] {
                        None => {
                            col_pot[j] = Some(want);
                            cols.push(j);
                            queue.push_back((false, j));
                        }
                        Some(q) if q != want => return Err(Error::NotGraded),
                        _ => {}
                    }
                }
            } else {
                let q = col_pot[idx].unwrap();
                for &(i, e) in &col_adj[idx] {
                    let want = q + e;
                    match row_pot[i] {
                        None => {
                            row_pot[i] = Some(want);
                            rows.push(i);
                            queue.push_back((true, i));
                        }
                        Some(p) if p != want => return Err(Error::NotGraded),
                        _ => {}
                    }
                }
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        let row_index: HashMap<usize, usize> = rows.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut mat = QMatrix::zeros(rows.len(), cols.len());
        for (cj, &j) in cols.iter().enumerate() {
            for &(i, _) in &col_adj[j] {
                mat.set(row_index[&i], cj, coeff[&(i, j)].clone());
            }
        }
        let pots = cols.iter().map(|&j| col_pot[j].unwrap()).collect();
        blocks.push(Block {
            rows,
            cols,
            col_pot: pots,
            mat,
        });
    }
    Ok(blocks)
}

#[cfg(feature = "parallel")]
fn map_blocks<T: Send>(blocks: Vec<Block>, f: impl Fn(Block) -> T + Sync + Send) -> Vec<T> {
    use rayon::prelude::*;
    blocks.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_blocks<T: Send>(blocks: Vec<Block>, f: impl Fn(Block) -> T + Sync + Send) -> Vec<T> {
    blocks.into_iter().map(f).collect()
}

/// Rank over `Q(u)` of a graded matrix.
pub fn graded_rank(m: &LaurentMatrix) -> Result<usize> {
    let blocks = graded_blocks(m)?;
    Ok(map_blocks(blocks, |b| if b.rows.is_empty() { 0 } else { b.mat.rank() })
        .into_iter()
        .sum())
}

/// Nullspace basis over `Q(u)` of a graded matrix, in reduced echelon form with respect to
/// the column priority `priority[j]` (smaller is more significant). Each vector has leading
/// coefficient exactly 1; vectors are sorted by their leading column's priority.
pub fn graded_nullspace(
    m: &LaurentMatrix,
    priority: &[usize],
) -> Result<Vec<Vec<(usize, LaurentScalar)>>> {
    assert_eq!(priority.len(), m.cols);
    let blocks = graded_blocks(m)?;
    let per_block = map_blocks(blocks, |b| {
        let kernel = if b.rows.is_empty() {
            vec![vec![Rational::one()]]
        } else {
            b.mat.nullspace()
        };
        if kernel.is_empty() {
            return Vec::new();
        }
        let mut order: Vec<usize> = (0..b.cols.len()).collect();
        order.sort_by_key(|&c| priority[b.cols[c]]);
        let mut k = QMatrix::zeros(kernel.len(), order.len());
        for (r, v) in kernel.iter().enumerate() {
            for (pos, &c) in order.iter().enumerate() {
                k.set(r, pos, v[c].clone());
            }
        }
        let pivots = k.rref();
        let mut out = Vec::with_capacity(pivots.len());
        for (r, &pc) in pivots.iter().enumerate() {
            let lead_pot = b.col_pot[order[pc]];
            let mut vec = Vec::new();
            for (pos, &c) in order.iter().enumerate() {
                let x = k.get(r, pos);
                if !x.is_zero() {
                    vec.push((b.cols[c], LaurentScalar::monomial(x.clone(), b.col_pot[c] - lead_pot)));
                }
            }
            out.push((priority[b.cols[order[pc]]], vec));
        }
        out
    });
    let mut all: Vec<(usize, Vec<(usize, LaurentScalar)>)> = per_block.into_iter().flatten().collect();
    all.sort_by_key(|(p, _)| *p);
    Ok(all
        .into_iter()
        .map(|(_, mut v)| {
            v.sort_by_key(|(c, _)| *c);
            v
        })
        .collect())
}

/// Dense square matrix over `Q[u, u⁻¹]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentDense {
    n: usize,
    data: Vec<LaurentScalar>,
}

impl LaurentDense {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![LaurentScalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, LaurentScalar::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentScalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentScalar) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|a| a.scale(r)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[LaurentScalar]) -> Vec<LaurentScalar> {
        (0..self.n)
            .map(|i| {
                let mut acc = LaurentScalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// A rational matrix similar to `self` through a diagonal `u`-power change of basis,
    /// i.e. `self = D R D⁻¹` with `D = diag(u^p_i)`.
    pub fn graded_similar(&self) -> Result<QMatrix> {
        let n = self.n;
        let mut pot: Vec<Option<i32>> = vec![None; n];
        let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); n];
        let mut r = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let (e, c) = v.as_monomial().ok_or(Error::NotGraded)?;
                r.set(i, j, c.clone());
                if i != j {
                    // e = p_i − p_j
                    adj[j].push((i, e));
                    adj[i].push((j, -e));
                } else if e != 0 {
                    return Err(Error::NotGraded);
                }
            }
        }
        for s in 0..n {
            if pot[s].is_some() {
                continue;
            }
            pot[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                let px = pot[x].unwrap();
                for &(y, e) in &adj[x] {
                    let want = px + e;
                    match pot[y] {
                        None => {
                            pot[y] = Some(want);
                            queue.push_back(y);
                        }
                        Some(q) if q != want => return Err(Error::NotGraded),
                        _ => {}
                    }
                }
            }
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::{int, rat};

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn rank_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_and_solve() {
        let m = q(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(2));
        let x = m.solve(&[int(3), int(11)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert!(q(&[&[1, 1], &[1, 1]]).solve(&[int(0), int(1)]).is_none());
    }

    #[test]
    fn charpoly_matches_known() {
        let m = q(&[&[2, 1, 0], &[0, 3, 4], &[5, 0, 1]]);
        // det(xI - M) computed by cofactor expansion: x^3 - 6x^2 + 11x - 26
        assert_eq!(m.charpoly(), vec![int(-26), int(11), int(-6), int(1)]);
        let z = q(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(z.charpoly(), vec![int(-1), int(0), int(0), int(1)]);
    }

    #[test]
    fn roots() {
        let p = poly_from_roots(&[int(9), int(6), int(6), rat(3, 2)]);
        let mut r = rational_roots(&p).unwrap();
        r.sort();
        assert_eq!(r, vec![rat(3, 2), int(6), int(6), int(9)]);
        let irr = vec![int(-20468736), int(-1080), int(1)];
        assert!(rational_roots(&irr).is_none());
    }

    #[test]
    fn graded_kernel_tracks_u_powers() {
        // columns: E2h(-1), h(-2); the single row is the image in degree-1 Fock space
        let mut m = LaurentMatrix::new(1, 2);
        m.add_entry(0, 0, &"12*u^-1".parse().unwrap());
        m.add_entry(0, 1, &LaurentScalar::from_int(2));
        let ns = graded_nullspace(&m, &[0, 1]).unwrap();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0], (0, LaurentScalar::one()));
        assert_eq!(ns[0][1], (1, "-6*u^-1".parse().unwrap()));
        assert_eq!(graded_rank(&m).unwrap(), 1);
    }

    #[test]
    fn ungraded_matrix_is_rejected() {
        let mut m = LaurentMatrix::new(2, 2);
        for (i, j, s) in [(0, 0, "1"), (0, 1, "1"), (1, 0, "1"), (1, 1, "u")] {
            m.add_entry(i, j, &s.parse().unwrap());
        }
        assert_eq!(graded_rank(&m), Err(Error::NotGraded));
        let mut n = LaurentMatrix::new(1, 1);
        n.add_entry(0, 0, &"1 + u".parse().unwrap());
        assert_eq!(graded_rank(&n), Err(Error::NotGraded));
    }
}
