use serde::Serialize;

use super::poly::Polynomial;
use crate::{Error, Result, Scalar};

/// Closed search interval for real roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootWindow<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> RootWindow<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: T) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn unbounded() -> Self {
        Self { lo: T::neg_infinity(), hi: T::infinity() }
    }
}

impl<T: Scalar> Default for RootWindow<T> {
    /// `[-1e4, 1e4]`: far-field roots of high-order termination
    /// polynomials are not of interest.
    fn default() -> Self {
        Self { lo: T::lit(-1e4), hi: T::lit(1e4) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RealRoot<T> {
    pub value: T,
    pub multiplicity: usize,
    /// Set when several isolated roots closer than the merge distance were
    /// folded into this one.
    pub merged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsolationMethod {
    Sturm,
    /// Rolle bracketing between the real roots of successive derivatives;
    /// used above [`STURM_MAX_DEGREE`] or when the floating-point Sturm
    /// chain is inconsistent.
    DerivativeCascade,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport<T> {
    pub roots: Vec<RealRoot<T>>,
    pub method: IsolationMethod,
    pub degree: usize,
    pub merged_clusters: usize,
}

impl<T: Scalar> RootReport<T> {
    pub fn values(&self) -> Vec<T> {
        self.roots.iter().map(|r| r.value).collect()
    }

    /// Number of real roots counted with multiplicity.
    pub fn real_count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// Sturm chains in working precision are trusted up to this degree.
pub const STURM_MAX_DEGREE: usize = 60;

const MERGE_DISTANCE: f64 = 1e-10;

/// All real roots of `p` inside `window`, ascending.
pub fn real_roots<T: Scalar>(p: &Polynomial<T>, window: RootWindow<T>) -> Result<RootReport<T>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (p, _) = p.normalized();
    let degree = p.degree().unwrap_or(0);

    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let q = Polynomial::new(p.coeffs()[zeros..].to_vec());
    let mut roots = Vec::new();
    if zeros > 0 && window.contains(T::zero()) {
        roots.push(RealRoot { value: T::zero(), multiplicity: zeros, merged: false });
    }

    let n = q.degree().unwrap_or(0);
    let mut method = if n <= STURM_MAX_DEGREE { IsolationMethod::Sturm } else { IsolationMethod::DerivativeCascade };
    if n > 0 {
        // x = σz with σ a power of two balancing |a_0| against |a_n σ^n|
        let ratio = (q.coeffs()[0].abs() / q.leading().abs()).as_f64();
        let sigma = T::lit(2f64.powi((ratio.log2() / n as f64).round().clamp(-500.0, 500.0) as i32));
        let mut pow = T::one();
        let scaled = Polynomial::new(
            q.coeffs()
                .iter()
                .map(|&c| {
                    let v = c * pow;
                    pow = pow * sigma;
                    v
                })
                .collect(),
        )
        .normalized()
        .0;
        let bound = cauchy_bound(&scaled);
        let lo = (window.lo / sigma).max(-bound);
        let hi = (window.hi / sigma).min(bound);
        if lo <= hi {
            let cascaded = || cascade(&scaled, lo, hi);
            let found = match method {
                IsolationMethod::Sturm => {
                    // the floating-point chain can lose roots; keep whichever
                    // bracketing found more
                    let c = cascaded();
                    match isolate_sturm(&scaled, lo, hi) {
                        Some(s) if count(&s) >= count(&c) || count(&c) > n => s,
                        _ => {
                            method = IsolationMethod::DerivativeCascade;
                            c
                        }
                    }
                }
                IsolationMethod::DerivativeCascade => cascaded(),
            };
            roots.extend(found.into_iter().map(|r| RealRoot { value: r.value * sigma, ..r }));
        }
    }

    roots.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite roots"));
    let (roots, merged_clusters) = merge_close(roots);
    Ok(RootReport { roots, method, degree, merged_clusters })
}

fn count<T>(roots: &[RealRoot<T>]) -> usize {
    roots.iter().map(|r| r.multiplicity).sum()
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count<T: Scalar>(p: &Polynomial<T>, a: T, b: T) -> usize {
    let chain = SturmChain::new(p);
    chain.variations(a).saturating_sub(chain.variations(b))
}

fn cauchy_bound<T: Scalar>(q: &Polynomial<T>) -> T {
    let lead = q.leading().abs();
    let n = q.coeffs().len() - 1;
    let m = q.coeffs()[..n].iter().fold(T::zero(), |m, c| m.max(c.abs() / lead));
    (T::one() + m) * T::lit(1.0 + 1e-12)
}

fn sign<T: Scalar>(v: T) -> i8 {
    if v > T::zero() {
        1
    } else if v < T::zero() {
        -1
    } else {
        0
    }
}

fn sign_at<T: Scalar>(p: &Polynomial<T>, x: T) -> i8 {
    if x.is_infinite() {
        let n = p.degree().unwrap_or(0);
        let s = sign(p.leading());
        return if x < T::zero() && n % 2 == 1 { -s } else { s };
    }
    sign(p.eval_scaled(x).0)
}

struct SturmChain<T> {
    polys: Vec<Polynomial<T>>,
}

impl<T: Scalar> SturmChain<T> {
    fn new(p: &Polynomial<T>) -> Self {
        let mut polys = vec![p.normalized().0];
        let d = p.derivative();
        if d.is_zero() {
            return Self { polys };
        }
        polys.push(d.normalized().0);
        let n = p.degree().unwrap_or(0);
        let gamma = T::unit_roundoff() * T::lit(32.0 * (n as f64 + 1.0));
        loop {
            let k = polys.len();
            let (quot, rem) = polys[k - 2].div_rem(&polys[k - 1]);
            let tol = gamma * (T::one() + quot.max_abs());
            let mut c = rem.coeffs().to_vec();
            while c.last().is_some_and(|v| v.abs() <= tol) {
                c.pop();
            }
            let r = -&Polynomial::new(c);
            if r.is_zero() {
                break;
            }
            polys.push(r.normalized().0);
            if polys.last().and_then(|p| p.degree()) == Some(0) {
                break;
            }
        }
        Self { polys }
    }

    fn variations(&self, x: T) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.polys {
            let s = sign_at(p, x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

fn cluster_width<T: Scalar>(a: T, b: T) -> T {
    T::lit(MERGE_DISTANCE) * T::one().max(a.abs()).max(b.abs())
}

/// Sturm isolation; `None` when the chain is numerically inconsistent.
fn isolate_sturm<T: Scalar>(q: &Polynomial<T>, lo: T, hi: T) -> Option<Vec<RealRoot<T>>> {
    let chain = SturmChain::new(q);
    // nudge the left end so a root sitting exactly on it is counted in (lo, hi]
    let lo_open = lo - cluster_width(lo, lo) * T::lit(1e-3);
    let mut stack = vec![(lo_open, hi, chain.variations(lo_open), chain.variations(hi))];
    let mut out = Vec::new();
    while let Some((a, b, va, vb)) = stack.pop() {
        if va < vb {
            return None;
        }
        let count = va - vb;
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(refine_isolated(q, a, b)?);
            continue;
        }
        if b - a <= cluster_width(a, b) {
            let mid = (a + b) * T::lit(0.5);
            out.push(RealRoot { value: mid, multiplicity: count.max(multiplicity(q, mid)), merged: true });
            continue;
        }
        let m = (a + b) * T::lit(0.5);
        let vm = chain.variations(m);
        stack.push((m, b, vm, vb));
        stack.push((a, m, va, vm));
    }
    Some(out)
}

fn refine_isolated<T: Scalar>(q: &Polynomial<T>, a: T, b: T) -> Option<RealRoot<T>> {
    let (sa, sb) = (sign_at(q, a), sign_at(q, b));
    if sb == 0 {
        return Some(RealRoot { value: b, multiplicity: multiplicity(q, b), merged: false });
    }
    if sa * sb < 0 {
        let x = bracketed_newton(q, a, b);
        return Some(RealRoot { value: x, multiplicity: multiplicity(q, x), merged: false });
    }
    // even multiplicity: the root is a critical point
    let d = q.derivative();
    let (da, db) = (sign_at(&d, a), sign_at(&d, b));
    if da * db < 0 {
        let x = bracketed_newton(&d, a, b);
        if is_negligible(q, x) {
            return Some(RealRoot { value: x, multiplicity: multiplicity(q, x).max(2), merged: false });
        }
    }
    None
}

/// Safeguarded Newton inside a sign-change bracket, to working precision.
/// Falls back to bisection whenever Newton leaves the bracket or fails to
/// halve the step.
fn bracketed_newton<T: Scalar>(q: &Polynomial<T>, mut a: T, mut b: T) -> T {
    let sa = sign_at(q, a);
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut x = (a + b) * half;
    let mut dx_old = b - a;
    let mut dx = dx_old;
    let (mut v, mut d) = q.eval_scaled(x);
    for _ in 0..2000 {
        if sign(v) == 0 {
            return x;
        }
        if sign(v) == sa {
            a = x;
        } else {
            b = x;
        }
        let out_of_range = ((x - b) * d - v) * ((x - a) * d - v) > T::zero();
        let slow = (two * v).abs() > (dx_old * d).abs();
        dx_old = dx;
        if out_of_range || slow || d.is_zero() {
            dx = (b - a) * half;
            x = a + dx;
        } else {
            dx = v / d;
            x = x - dx;
        }
        let tiny = T::unit_roundoff() * T::lit(4.0) * x.abs().max(T::min_positive_value());
        if dx.abs() <= tiny || b - a <= tiny {
            return x;
        }
        (v, d) = q.eval_scaled(x);
    }
    x
}

/// Evaluation error bound test: `|q(x)|` below the rounding noise of Horner.
/// `Σ |c_k| |x|^k`, scaled like [`Polynomial::eval_scaled`]: a bound on the
/// rounding error of evaluating `q` at `x`, in units of `u`.
fn abs_size<T: Scalar>(q: &Polynomial<T>, x: T) -> T {
    let ax = x.abs();
    if ax <= T::one() {
        q.coeffs().iter().rev().fold(T::zero(), |acc, c| acc * ax + c.abs())
    } else {
        let z = ax.recip();
        q.coeffs().iter().fold(T::zero(), |acc, c| acc * z + c.abs())
    }
}

fn is_negligible<T: Scalar>(q: &Polynomial<T>, x: T) -> bool {
    let n = q.coeffs().len();
    q.eval_scaled(x).0.abs() <= T::unit_roundoff() * T::lit(16.0 * n as f64) * abs_size(q, x)
}

/// Multiplicity estimate: number of leading derivatives that vanish at `x`
/// relative to their own evaluation error bound, with a loose threshold.
fn multiplicity<T: Scalar>(q: &Polynomial<T>, x: T) -> usize {
    let threshold = T::unit_roundoff().sqrt() * T::lit(10.0);
    let mut m = 1;
    let mut d = q.derivative();
    while !d.is_zero() && d.degree().unwrap_or(0) > 0 {
        if d.eval_scaled(x).0.abs() > threshold * abs_size(&d, x) {
            break;
        }
        m += 1;
        d = d.derivative();
    }
    m
}

/// Real roots in `[lo, hi]` by recursive Rolle bracketing: between two
/// consecutive real roots of `q'` the polynomial is monotone.
fn cascade<T: Scalar>(q: &Polynomial<T>, lo: T, hi: T) -> Vec<RealRoot<T>> {
    let n = q.degree().unwrap_or(0);
    let mut derivs = vec![q.normalized().0];
    for _ in 1..n {
        let d = derivs.last().unwrap().derivative().normalized().0;
        derivs.push(d);
    }
    let mut crit: Vec<T> = Vec::new();
    for f in derivs.iter().rev() {
        let mut pts = Vec::with_capacity(crit.len() + 2);
        pts.push(lo);
        pts.extend(crit.iter().copied().filter(|&c| c > lo && c < hi));
        pts.push(hi);
        let mut roots: Vec<T> = Vec::new();
        for w in pts.windows(2) {
            let (x0, x1) = (w[0], w[1]);
            let (s0, s1) = (sign_at(f, x0), sign_at(f, x1));
            if s0 == 0 {
                roots.push(x0);
            } else if s1 != 0 && s0 != s1 {
                roots.push(bracketed_newton(f, x0, x1));
            }
        }
        if sign_at(f, hi) == 0 {
            roots.push(hi);
        }
        for &c in &crit {
            if c > lo && c < hi && is_negligible(f, c) {
                roots.push(c);
            }
        }
        roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        roots.dedup_by(|a, b| (*a - *b).abs() <= T::unit_roundoff() * T::lit(64.0) * a.abs().max(T::one()));
        crit = roots;
    }
    crit.into_iter().map(|x| RealRoot { value: x, multiplicity: multiplicity(q, x), merged: false }).collect()
}

fn merge_close<T: Scalar>(roots: Vec<RealRoot<T>>) -> (Vec<RealRoot<T>>, usize) {
    let mut out: Vec<RealRoot<T>> = Vec::with_capacity(roots.len());
    let mut merges = 0;
    for r in roots {
        if let Some(last) = out.last_mut() {
            let gap = (r.value - last.value).abs();
            // a multiple root smears into noise roots over about √u
            let smeared = (last.multiplicity > 1 || r.multiplicity > 1)
                && gap <= T::unit_roundoff().sqrt() * T::lit(100.0) * r.value.abs().max(T::one());
            if gap <= cluster_width(r.value, last.value) || smeared {
                let total = last.multiplicity + r.multiplicity;
                last.value = (last.value * T::lit(last.multiplicity as f64) + r.value * T::lit(r.multiplicity as f64))
                    / T::lit(total as f64);
                last.multiplicity = total;
                last.merged = true;
                merges += 1;
                continue;
            }
        }
        out.push(r);
    }
    (out, merges)
}
