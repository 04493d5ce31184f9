//! Dense complex eigenvalue and spectral-norm kernel.
//!
//! Everything spectral in the crate routes through here: quaternion matrices
//! are mapped to their complex adjoint and handed to [`c_eigenvalues`] or
//! [`c_spectral_norm`].

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qmat::CMatrix;
use crate::rng::SplitMix64;
use crate::scalar::Real;

/// Largest dimension accepted by the eigensolver.
pub const MAX_DIMENSION: usize = 512;

/// Seed of the single random restart used by [`c_spectral_norm`].
pub const SPECTRAL_NORM_RESTART_SEED: u64 = 0x5EED_5EED;

const DEFLATION_TOL: f64 = 1e-14;
const ITERATIONS_PER_DIM: usize = 100;
const EXCEPTIONAL_EVERY: usize = 10;
const POWER_TOL: f64 = 1e-12;
const POWER_CAP: usize = 10_000;
const INVERSE_STEPS: usize = 5;
const EIGENPAIR_RESIDUAL: f64 = 1e-8;
const SINGULAR_SHIFT: f64 = 1e-10;

fn to_pairs<T: Real>(v: &[Complex<T>]) -> Vec<(f64, f64)> {
    v.iter().map(|c| (c.re.as_f64(), c.im.as_f64())).collect()
}

#[inline]
fn abs1<T: Real>(c: Complex<T>) -> T {
    c.re.abs() + c.im.abs()
}

/// All eigenvalues of a square complex matrix.
///
/// Balancing, Householder reduction to Hessenberg form, then single-shift
/// implicit QR with Wilkinson shifts. A subdiagonal entry is treated as zero
/// once `|h[i+1][i]| <= 1e-14 * (|h[i][i]| + |h[i+1][i+1]|)`. After 10 sweeps
/// without a deflation an exceptional shift is used; the whole run is capped
/// at `100 * d` sweeps.
pub fn c_eigenvalues<T: Real>(m: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    if !m.is_square() {
        return Err(Error::shape(format!("eigenvalues of a non-square {}x{} matrix", m.rows(), m.cols())));
    }
    let d = m.rows();
    if d > MAX_DIMENSION {
        return Err(Error::Parameter(format!("dimension {d} exceeds the eigensolver cap {MAX_DIMENSION}")));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut h = m.clone();
    balance(&mut h);
    hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

/// Parlett–Reinsch diagonal balancing with power-of-two scale factors.
fn balance<T: Real>(a: &mut CMatrix<T>) {
    let n = a.rows();
    let radix = T::lit(2.0);
    let radix2 = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c += abs1(a[(j, i)]);
                    r += abs1(a[(i, j)]);
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix2;
            }
            if (c + r) / f < T::lit(0.95) * s {
                done = false;
                let g = T::one() / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// In-place unitary similarity to upper Hessenberg form.
fn hessenberg<T: Real>(a: &mut CMatrix<T>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == T::zero() { Complex::one() } else { x0 / x0.norm() };
        // v = x + phase*|x| e1, reflector H = I - 2 v vᴴ / (vᴴ v)
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] += phase * norm;
        let vnorm2 = v.iter().map(|c| c.norm_sqr()).sum::<T>();
        if vnorm2 == T::zero() {
            continue;
        }
        let beta = T::lit(2.0) / vnorm2;
        // left: rows k+1.., all columns from k
        for j in k..n {
            let mut s = Complex::zero();
            for (t, vi) in v.iter().enumerate() {
                s += vi.conj() * a[(k + 1 + t, j)];
            }
            s *= beta;
            for (t, vi) in v.iter().enumerate() {
                a[(k + 1 + t, j)] -= *vi * s;
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let mut s = Complex::zero();
            for (t, vi) in v.iter().enumerate() {
                s += a[(i, k + 1 + t)] * *vi;
            }
            s *= beta;
            for (t, vi) in v.iter().enumerate() {
                a[(i, k + 1 + t)] -= s * vi.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex::zero();
        }
    }
}

/// Unitary 2×2 rotation `[[c̄, s̄], [−s, c]]` that maps `(x, y)` to `(r, 0)`.
#[derive(Clone, Copy)]
struct Givens<T> {
    c: Complex<T>,
    s: Complex<T>,
}

impl<T: Real> Givens<T> {
    fn zeroing(x: Complex<T>, y: Complex<T>) -> Self {
        let r = x.norm().hypot(y.norm());
        if r == T::zero() {
            return Self { c: Complex::one(), s: Complex::zero() };
        }
        Self { c: x / r, s: y / r }
    }

    /// Rows `p`, `p+1` of `h`, columns `lo..=hi`, replaced by `G · rows`.
    fn apply_left(&self, h: &mut CMatrix<T>, p: usize, lo: usize, hi: usize) {
        for j in lo..=hi {
            let (a, b) = (h[(p, j)], h[(p + 1, j)]);
            h[(p, j)] = self.c.conj() * a + self.s.conj() * b;
            h[(p + 1, j)] = -self.s * a + self.c * b;
        }
    }

    /// Columns `p`, `p+1` of `h`, rows `lo..=hi`, replaced by `cols · Gᴴ`.
    fn apply_right(&self, h: &mut CMatrix<T>, p: usize, lo: usize, hi: usize) {
        for i in lo..=hi {
            let (a, b) = (h[(i, p)], h[(i, p + 1)]);
            h[(i, p)] = a * self.c + b * self.s;
            h[(i, p + 1)] = -a * self.s.conj() + b * self.c.conj();
        }
    }
}

fn wilkinson_shift<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    let p = (a - d) * half;
    let disc = (p * p + b * c).sqrt();
    let mid = (a + d) * half;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr<T: Real>(h: &mut CMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = h.rows();
    let eps = T::tol(DEFLATION_TOL);
    let hnorm = h.norm_frobenius();
    let cap = ITERATIONS_PER_DIM * n;
    let mut eig: Vec<Option<Complex<T>>> = vec![None; n];
    let mut total = 0usize;
    let mut stalled = 0usize;
    let mut hi = n - 1;

    loop {
        // locate the active window [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = abs1(h[(lo, lo - 1)]);
            let mut diag = abs1(h[(lo - 1, lo - 1)]) + abs1(h[(lo, lo)]);
            if diag == T::zero() {
                diag = hnorm;
            }
            if sub <= eps * diag {
                h[(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = Some(h[(hi, hi)]);
            stalled = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }

        total += 1;
        stalled += 1;
        if total > cap {
            let partial: Vec<Complex<T>> = (0..n).map(|i| eig[i].unwrap_or(h[(i, i)])).collect();
            return Err(Error::Convergence { what: "Hessenberg QR", iterations: total - 1, partial: to_pairs(&partial) });
        }

        let shift = if stalled.is_multiple_of(EXCEPTIONAL_EVERY) {
            let mut s = h[(hi, hi - 1)].norm();
            if hi >= 2 {
                s += h[(hi - 1, hi - 2)].norm();
            }
            h[(hi, hi)] + Complex::new(T::lit(0.75) * s, T::lit(0.25) * s)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        // implicit single-shift sweep over the window
        let g = Givens::zeroing(h[(lo, lo)] - shift, h[(lo + 1, lo)]);
        g.apply_left(h, lo, lo, hi);
        g.apply_right(h, lo, lo, (lo + 2).min(hi));
        for p in lo + 1..hi {
            let g = Givens::zeroing(h[(p, p - 1)], h[(p + 1, p - 1)]);
            g.apply_left(h, p, p - 1, hi);
            h[(p + 1, p - 1)] = Complex::zero();
            g.apply_right(h, p, lo, (p + 2).min(hi));
        }
    }
    Ok(eig.into_iter().map(|e| e.expect("every index deflated")).collect())
}

/// LU factorization with partial pivoting of a square matrix.
pub(crate) struct Lu<T> {
    lu: CMatrix<T>,
    perm: Vec<usize>,
    sign_flips: usize,
}

impl<T: Real> Lu<T> {
    pub(crate) fn factor(a: &CMatrix<T>) -> Self {
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[(i, k)].norm().partial_cmp(&lu[(j, k)].norm()).unwrap_or(std::cmp::Ordering::Equal))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
                sign_flips += 1;
            }
            let pivot = lu[(k, k)];
            if pivot.is_zero() {
                continue;
            }
            for i in k + 1..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    lu[(i, j)] = lu[(i, j)] - f * lu[(k, j)];
                }
            }
        }
        Self { lu, perm, sign_flips }
    }

    pub(crate) fn min_pivot(&self) -> T {
        (0..self.lu.rows()).map(|i| self.lu[(i, i)].norm()).fold(T::infinity(), T::min)
    }

    /// Replaces pivots smaller than `floor` in modulus by `floor`.
    fn floor_pivots(&mut self, floor: T) {
        for i in 0..self.lu.rows() {
            if self.lu[(i, i)].norm() < floor {
                self.lu[(i, i)] = Complex::new(floor, T::zero());
            }
        }
    }

    pub(crate) fn determinant(&self) -> Complex<T> {
        let mut d = (0..self.lu.rows()).fold(Complex::one(), |acc: Complex<T>, i| acc * self.lu[(i, i)]);
        if self.sign_flips % 2 == 1 {
            d = -d;
        }
        d
    }

    pub(crate) fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.lu.rows();
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] = x[i] - self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] = x[i] - self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Determinant via LU with partial pivoting.
pub fn c_determinant<T: Real>(m: &CMatrix<T>) -> Result<Complex<T>> {
    if !m.is_square() {
        return Err(Error::shape("determinant of a non-square matrix"));
    }
    Ok(Lu::factor(m).determinant())
}

pub(crate) fn vec_norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
}

fn normalize<T: Real>(v: &mut [Complex<T>]) -> T {
    let nrm = vec_norm(v);
    if nrm > T::zero() {
        for c in v.iter_mut() {
            *c /= nrm;
        }
    }
    nrm
}

/// Unit eigenvector for an (approximate) eigenvalue `lambda` by inverse
/// iteration, with the residual measured against `lambda`.
///
/// The returned vector has its largest component real and positive.
pub fn c_eigenpair<T: Real>(m: &CMatrix<T>, lambda: Complex<T>) -> Result<Vec<Complex<T>>> {
    let norm2 = c_spectral_norm(m)?;
    c_eigenpair_with_norm(m, lambda, norm2)
}

pub(crate) fn c_eigenpair_with_norm<T: Real>(m: &CMatrix<T>, lambda: Complex<T>, norm2: T) -> Result<Vec<Complex<T>>> {
    if !m.is_square() {
        return Err(Error::shape("eigenvector of a non-square matrix"));
    }
    let n = m.rows();
    let scale = norm2.max(T::min_positive_value());
    let singular = T::epsilon() * scale.max(T::one());

    let shifted = |mu: Complex<T>| {
        let mut a = m.clone();
        for i in 0..n {
            a[(i, i)] -= mu;
        }
        Lu::factor(&a)
    };
    let mut lu = shifted(lambda);
    if lu.min_pivot() <= singular {
        lu = shifted(lambda + Complex::new(T::lit(SINGULAR_SHIFT) * scale.max(T::one()), T::zero()));
        lu.floor_pivots(singular);
    }

    let mut v = vec![Complex::new(T::one() / T::lit(n as f64).sqrt(), T::zero()); n];
    let tol = T::tol(EIGENPAIR_RESIDUAL) * scale;
    // keep refining past the target while each step still pays off
    let mut best: Option<(T, Vec<Complex<T>>)> = None;
    for _ in 0..INVERSE_STEPS {
        let mut y = lu.solve(&v);
        if !y.iter().all(|c| c.re.is_finite() && c.im.is_finite()) || normalize(&mut y) == T::zero() {
            break;
        }
        v = y;
        let mv = m.apply(&v);
        let r: Vec<Complex<T>> = mv.iter().zip(&v).map(|(a, b)| *a - *b * lambda).collect();
        let res = vec_norm(&r);
        let prev = best.as_ref().map_or(T::infinity(), |b| b.0);
        if res < prev {
            best = Some((res, v.clone()));
        }
        if prev <= tol && res > prev * T::lit(0.5) {
            break;
        }
    }
    match best {
        Some((res, mut v)) if res <= tol => {
            fix_phase(&mut v);
            Ok(v)
        }
        other => Err(Error::Convergence {
            what: "inverse iteration",
            iterations: INVERSE_STEPS,
            partial: vec![(other.map_or(f64::INFINITY, |b| b.0.as_f64()), 0.0)],
        }),
    }
}

fn fix_phase<T: Real>(v: &mut [Complex<T>]) {
    let Some(big) = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal))
    else {
        return;
    };
    if big.norm() == T::zero() {
        return;
    }
    let phase = big.conj() / big.norm();
    for c in v.iter_mut() {
        *c *= phase;
    }
}

/// Largest singular value: square root of the dominant eigenvalue of `MᴴM`,
/// found by power iteration from the normalized all-ones vector.
///
/// Iteration stops once the Rayleigh quotient changes by at most `1e-12`
/// relative and the extrapolated remaining error (from the ratio of
/// successive changes) is below the same level. If the start vector turns out
/// to lie in an invariant subspace that misses the dominant eigenvalue, one
/// restart from a seeded random vector is made.
pub fn c_spectral_norm<T: Real>(m: &CMatrix<T>) -> Result<T> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(T::zero());
    }
    let gram = m.conj_transpose().matmul(m)?;
    let gf = gram.norm_frobenius();
    if gf == T::zero() {
        return Ok(T::zero());
    }
    let d = gram.rows();
    let ones = vec![Complex::new(T::one(), T::zero()); d];
    // λ_max(G) >= ‖G‖_F / √d for Hermitian positive semidefinite G
    let floor = gf / T::lit(d as f64).sqrt() * (T::one() - T::lit(1e-6));
    let theta = match power_iteration(&gram, ones)? {
        Some(t) if t >= floor => t,
        first => {
            let mut rng = SplitMix64::new(SPECTRAL_NORM_RESTART_SEED);
            let start = (0..d).map(|_| Complex::new(T::lit(rng.symmetric(1.0)), T::lit(rng.symmetric(1.0)))).collect();
            let second = power_iteration(&gram, start)?.unwrap_or(T::zero());
            first.unwrap_or(T::zero()).max(second)
        }
    };
    Ok(theta.max(T::zero()).sqrt())
}

/// Returns `None` when the iterate is annihilated (start vector in the kernel).
fn power_iteration<T: Real>(g: &CMatrix<T>, mut v: Vec<Complex<T>>) -> Result<Option<T>> {
    if normalize(&mut v) == T::zero() {
        return Ok(None);
    }
    let tol = T::tol(POWER_TOL);
    let noise = T::epsilon() * T::lit(64.0);
    let mut prev = T::zero();
    let mut prev_delta = T::infinity();
    for it in 1..=POWER_CAP {
        let mut w = g.apply(&v);
        let theta = v.iter().zip(&w).fold(T::zero(), |acc, (a, b)| acc + (a.conj() * *b).re);
        if normalize(&mut w) == T::zero() {
            return Ok(if it == 1 { None } else { Some(theta) });
        }
        v = w;
        let delta = (theta - prev).abs();
        if it > 2 && delta <= tol * theta {
            let ratio = delta / prev_delta;
            let settled = delta <= noise * theta
                || ratio >= T::one()
                || delta * ratio / (T::one() - ratio) <= tol * theta;
            if settled {
                return Ok(Some(theta));
            }
        }
        prev_delta = delta;
        prev = theta;
    }
    Err(Error::Convergence { what: "power iteration", iterations: POWER_CAP, partial: vec![(prev.as_f64(), 0.0)] })
}
