//! Triangular systems for the coefficients of one shadow term.
//!
//! Two independent assemblies are provided. The direct one writes each entry
//! from its closed expression; the recursive one builds the cosine and sine
//! matrices of step `k` and combines them with `cos(pi rho)`, `sin(pi rho)`.
//! They must agree to rounding.

use crate::exactq::{cos_pi, is_lambda_shift_zero, is_sin_zero, sin_pi, Approach, CornerConfig, Rational, Real};
use crate::Error;

/// `M a = g`, upper triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularSystem {
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    /// One log power was added at this step: the first column and the last
    /// row of `matrix` vanish and `a[0] = 0`.
    pub augmented: bool,
}

impl TriangularSystem {
    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    /// `max |M a - g|`.
    pub fn residual(&self, a: &[f64]) -> f64 {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, g)| (row.iter().zip(a).map(|(m, x)| m * x).sum::<f64>() - g).abs())
            .fold(0.0, f64::max)
    }
}

/// Whether step `k` needs one more log power. Decided exactly.
///
/// D-N augments when `sin(k pi rho) = 0` or when the shifted exponent
/// vanishes; the two never coincide. D-D augments only on the sine zero.
pub fn augments(config: &CornerConfig, j: u32, k: u32) -> Result<bool, Error> {
    let rho = config.rho();
    let sin_zero = is_sin_zero(k, &rho);
    match config.approach {
        Approach::DirichletNeumann => {
            let shift_zero = is_lambda_shift_zero(Approach::DirichletNeumann, j, k, &rho);
            if sin_zero && shift_zero {
                return Err(Error::Inconsistent(format!(
                    "both augmentation triggers fire at j={j}, k={k}, rho={rho}"
                )));
            }
            Ok(sin_zero || shift_zero)
        }
        Approach::DirichletDirichlet => {
            if is_lambda_shift_zero(Approach::DirichletDirichlet, j, k, &rho) && !sin_zero {
                return Err(Error::Inconsistent(format!(
                    "D-D exponent vanishes without a sine zero at j={j}, k={k}"
                )));
            }
            Ok(sin_zero)
        }
        Approach::ClosedForm => Err(Error::Domain("the closed form has no shadow terms".into())),
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn half(n: usize) -> Rational {
    Rational::new(n as i64, 2).unwrap()
}

struct Step {
    n: usize,
    augmented: bool,
    omega: f64,
    gamma: f64,
    rho: Real,
    e_k: f64,
    e_prev: f64,
}

fn step(config: &CornerConfig, j: u32, k: u32, prev: &[f64]) -> Result<Step, Error> {
    if k == 0 {
        return Err(Error::Domain("shadow systems start at k = 1".into()));
    }
    if prev.is_empty() {
        return Err(Error::Domain("previous coefficient vector is empty".into()));
    }
    let augmented = augments(config, j, k)?;
    Ok(Step {
        n: prev.len() + augmented as usize,
        augmented,
        omega: config.omega(),
        gamma: config.gamma,
        rho: config.rho(),
        e_k: config.exponent(j, k).value(),
        e_prev: config.exponent(j, k - 1).value(),
    })
}

/// Assembles the system of step `k` entry by entry.
pub fn build_system_direct(config: &CornerConfig, j: u32, k: u32, prev: &[f64]) -> Result<TriangularSystem, Error> {
    let s = step(config, j, k, prev)?;
    let w = s.omega;
    let kr = s.rho.mul_int(k as i64);
    let kr_prev = s.rho.mul_int(k as i64 - 1);
    let mut matrix = vec![vec![0.0; s.n]; s.n];
    let mut rhs = vec![0.0; s.n];
    match config.approach {
        Approach::DirichletNeumann => {
            for m in 0..s.n {
                for l in m..s.n {
                    let d = l - m;
                    let ph = kr.add_rational(&half(d));
                    let deriv = if d == 0 { 0.0 } else { d as f64 * w.powi(d as i32 - 1) * cos_pi(&ph) };
                    matrix[m][l] = binomial(l, m) * (deriv - s.e_k * w.powi(d as i32) * sin_pi(&ph));
                }
                rhs[m] = -s.gamma
                    * (m..prev.len())
                        .map(|l| {
                            let d = l - m;
                            prev[l] * binomial(l, m) * w.powi(d as i32) * cos_pi(&kr_prev.add_rational(&half(d)))
                        })
                        .sum::<f64>();
            }
        }
        Approach::DirichletDirichlet => {
            let nkr = kr.neg();
            let nkr_prev = kr_prev.neg();
            for m in 0..s.n {
                for l in m..s.n {
                    let d = l - m;
                    matrix[m][l] = binomial(l, m) * w.powi(d as i32) * sin_pi(&nkr.add_rational(&half(d)));
                }
                rhs[m] = -(1.0 / s.gamma)
                    * (m..prev.len())
                        .map(|l| {
                            let d = l - m;
                            let ph = nkr_prev.add_rational(&half(d));
                            let deriv = if d == 0 { 0.0 } else { d as f64 * w.powi(d as i32 - 1) * sin_pi(&ph) };
                            prev[l] * binomial(l, m) * (deriv + s.e_prev * w.powi(d as i32) * cos_pi(&ph))
                        })
                        .sum::<f64>();
            }
        }
        Approach::ClosedForm => unreachable!("rejected by augments()"),
    }
    Ok(TriangularSystem { matrix, rhs, augmented: s.augmented })
}

type Mat = Vec<Vec<f64>>;

fn trig_mats(n: usize, w: f64, phase: impl Fn(usize) -> Real) -> (Mat, Mat) {
    let mut c = vec![vec![0.0; n]; n];
    let mut s = vec![vec![0.0; n]; n];
    for m in 0..n {
        for l in m..n {
            let d = l - m;
            let f = binomial(l, m) * w.powi(d as i32);
            let ph = phase(d);
            c[m][l] = f * cos_pi(&ph);
            s[m][l] = f * sin_pi(&ph);
        }
    }
    (c, s)
}

fn tilde(a: &Mat) -> Mat {
    a.iter()
        .enumerate()
        .map(|(m, row)| row.iter().enumerate().map(|(l, x)| if l >= m { (l - m) as f64 * x } else { 0.0 }).collect())
        .collect()
}

fn combine(terms: &[(f64, &Mat)]) -> Mat {
    let n = terms[0].1.len();
    let mut out = vec![vec![0.0; n]; n];
    for (c, a) in terms {
        for (o, r) in out.iter_mut().zip(a.iter()) {
            for (x, y) in o.iter_mut().zip(r) {
                *x += c * y;
            }
        }
    }
    out
}

fn matvec(a: &Mat, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(m, v)| m * v).sum()).collect()
}

/// Assembles the same system through the cosine/sine matrix recursion.
pub fn build_system_recursive(config: &CornerConfig, j: u32, k: u32, prev: &[f64]) -> Result<TriangularSystem, Error> {
    let s = step(config, j, k, prev)?;
    let w = s.omega;
    let kr = s.rho.mul_int(k as i64);
    let (c1, s1) = (cos_pi(&s.rho), sin_pi(&s.rho));
    let mut ext = prev.to_vec();
    ext.resize(s.n, 0.0);
    let (matrix, rhs) = match config.approach {
        Approach::DirichletNeumann => {
            let (r, n) = trig_mats(s.n, w, |d| kr.add_rational(&half(d)));
            let m = combine(&[(1.0 / w, &tilde(&r)), (-s.e_k, &n)]);
            let b = combine(&[(c1, &r), (s1, &n)]);
            let g = matvec(&b, &ext).into_iter().map(|x| -s.gamma * x).collect();
            (m, g)
        }
        Approach::DirichletDirichlet => {
            let nkr = kr.neg();
            let (n, m) = trig_mats(s.n, w, |d| nkr.add_rational(&half(d)));
            let b = combine(&[
                (c1 / w, &tilde(&m)),
                (c1 * s.e_prev, &n),
                (s1 / w, &tilde(&n)),
                (-s1 * s.e_prev, &m),
            ]);
            let g = matvec(&b, &ext).into_iter().map(|x| -x / s.gamma).collect();
            (m, g)
        }
        Approach::ClosedForm => unreachable!("rejected by augments()"),
    };
    Ok(TriangularSystem { matrix, rhs, augmented: s.augmented })
}

/// Back substitution. On an augmented system `a[0] = 0` and the shifted
/// upper block (rows `0..n-1`, columns `1..n`) is solved instead.
pub fn solve_triangular(sys: &TriangularSystem) -> Result<Vec<f64>, Error> {
    let n = sys.size();
    let (m, g) = (&sys.matrix, &sys.rhs);
    let mut a = vec![0.0; n];
    if !sys.augmented {
        for i in (0..n).rev() {
            let piv = m[i][i];
            if piv == 0.0 {
                return Err(Error::Inconsistent(format!("zero pivot at row {i} of a non-augmented system")));
            }
            let s: f64 = (i + 1..n).map(|l| m[i][l] * a[l]).sum();
            a[i] = (g[i] - s) / piv;
        }
    } else {
        if g[n - 1] != 0.0 {
            return Err(Error::Inconsistent("augmented system with nonzero last right-hand side".into()));
        }
        for i in (0..n - 1).rev() {
            let piv = m[i][i + 1];
            if piv == 0.0 {
                return Err(Error::Inconsistent(format!("zero superdiagonal pivot at row {i}")));
            }
            let s: f64 = (i + 2..n).map(|l| m[i][l] * a[l]).sum();
            a[i + 1] = (g[i] - s) / piv;
        }
    }
    Ok(a)
}
