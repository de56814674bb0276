//! Extended-precision brute-force oracles, independent of the library's
//! orthogonal-factorization path.
//!
//! Arithmetic is double-double (~31 significant digits): every f64 is
//! represented as an unevaluated hi + lo sum, with error-free transforms
//! for sums and products. The regression oracle forms the normal
//! equations XᵀX β = Xᵀy explicitly and solves them by Gauss-Jordan
//! elimination in that representation, so its results carry far more
//! precision than the f64 implementation under test.

/// Double-double value: hi + lo with |lo| <= ulp(hi)/2.
#[derive(Debug, Clone, Copy)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from(q1)));
        let q2 = r.to_f64() / other.hi;
        let r2 = r.sub(other.mul(Dd::from(q2)));
        let q3 = r2.to_f64() / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        let (hi, lo2) = quick_two_sum(hi, lo + q3);
        Dd { hi, lo: lo2 }
    }

    fn abs_hi(self) -> f64 {
        self.hi.abs()
    }
}

/// Exact product of two f64 inputs, accumulated losslessly.
fn dd_dot(a: &[f64], b: &[f64]) -> Dd {
    let mut acc = Dd::ZERO;
    for (&x, &y) in a.iter().zip(b) {
        let (p, e) = two_prod(x, y);
        acc = acc.add(Dd { hi: p, lo: e });
    }
    acc
}

/// Gauss-Jordan inverse with partial pivoting in double-double.
fn dd_invert(m: &[Vec<Dd>]) -> Vec<Vec<Dd>> {
    let p = m.len();
    let mut a: Vec<Vec<Dd>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut ext = row.clone();
            ext.extend((0..p).map(|j| if i == j { Dd::ONE } else { Dd::ZERO }));
            ext
        })
        .collect();
    for col in 0..p {
        let pivot = (col..p)
            .max_by(|&i, &j| a[i][col].abs_hi().partial_cmp(&a[j][col].abs_hi()).unwrap())
            .unwrap();
        a.swap(col, pivot);
        let d = a[col][col];
        assert!(d.abs_hi() != 0.0, "oracle system is singular");
        for v in a[col].iter_mut() {
            *v = v.div(d);
        }
        for row in 0..p {
            if row != col {
                let factor = a[row][col];
                let pivot_row = a[col].clone();
                for (cell, pv) in a[row].iter_mut().zip(&pivot_row) {
                    *cell = cell.sub(factor.mul(*pv));
                }
            }
        }
    }
    a.into_iter().map(|row| row[p..].to_vec()).collect()
}

pub struct OracleFit {
    pub beta: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub r_squared: f64,
    pub f_stat: f64,
}

/// Normal-equations least squares in double-double. `columns` includes the
/// intercept column; standard errors use RSS/(n − p) and the diagonal of
/// the inverted normal matrix.
pub fn normal_equations(columns: &[Vec<f64>], y: &[f64]) -> OracleFit {
    let p = columns.len();
    let n = y.len();

    let xtx: Vec<Vec<Dd>> = (0..p)
        .map(|i| (0..p).map(|j| dd_dot(&columns[i], &columns[j])).collect())
        .collect();
    let xty: Vec<Dd> = (0..p).map(|i| dd_dot(&columns[i], y)).collect();

    let inv = dd_invert(&xtx);
    let beta_dd: Vec<Dd> = (0..p)
        .map(|i| {
            let mut acc = Dd::ZERO;
            for j in 0..p {
                acc = acc.add(inv[i][j].mul(xty[j]));
            }
            acc
        })
        .collect();

    let mut rss = Dd::ZERO;
    for r in 0..n {
        let mut fitted = Dd::ZERO;
        for c in 0..p {
            fitted = fitted.add(beta_dd[c].mul(Dd::from(columns[c][r])));
        }
        let resid = Dd::from(y[r]).sub(fitted);
        rss = rss.add(resid.mul(resid));
    }

    let mut y_sum = Dd::ZERO;
    for &v in y {
        y_sum = y_sum.add(Dd::from(v));
    }
    let y_mean = y_sum.div(Dd::from(n as f64));
    let mut tss = Dd::ZERO;
    for &v in y {
        let d = Dd::from(v).sub(y_mean);
        tss = tss.add(d.mul(d));
    }

    let df1 = (p - 1) as f64;
    let df2 = (n - p) as f64;
    let sigma2 = rss.div(Dd::from(df2));
    let std_errors: Vec<f64> = (0..p)
        .map(|i| sigma2.mul(inv[i][i]).to_f64().sqrt())
        .collect();
    let r_squared = Dd::ONE.sub(rss.div(tss)).to_f64();
    let f_stat = (r_squared / df1) / ((1.0 - r_squared) / df2);

    OracleFit {
        beta: beta_dd.iter().map(|b| b.to_f64()).collect(),
        std_errors,
        r_squared,
        f_stat,
    }
}

/// Direct auxiliary-regression VIF: regress predictor `j` on the others
/// (with intercept) through the extended-precision oracle.
pub fn vif_oracle(predictors: &[Vec<f64>]) -> Vec<f64> {
    let n = predictors[0].len();
    (0..predictors.len())
        .map(|j| {
            let mut design = vec![vec![1.0; n]];
            for (k, col) in predictors.iter().enumerate() {
                if k != j {
                    design.push(col.clone());
                }
            }
            let fit = normal_equations(&design, &predictors[j]);
            1.0 / (1.0 - fit.r_squared)
        })
        .collect()
}

/// Deterministic generator shared by the random-instance criteria.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + u * (hi - lo)
    }
}
