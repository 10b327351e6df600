//! Adaptive 7/15-point Gauss–Kronrod quadrature.

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `∫_a^b f` to absolute tolerance `abs_tol` by recursive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Quadrature {
    if a == b {
        return Quadrature { value: 0.0, error: 0.0, evaluations: 0 };
    }
    let mut evaluations = 0;
    let (value, error) = refine(&f, a, b, abs_tol, 0, &mut evaluations);
    Quadrature { value, error, evaluations }
}

fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32, evals: &mut usize) -> (f64, f64) {
    let (v, e) = kronrod(f, a, b);
    *evals += 15;
    if e <= tol || depth >= 40 || !v.is_finite() {
        return (v, e);
    }
    let m = 0.5 * (a + b);
    let (v1, e1) = refine(f, a, m, tol / 2.0, depth + 1, evals);
    let (v2, e2) = refine(f, m, b, tol / 2.0, depth + 1, evals);
    (v1 + v2, e1 + e2)
}
