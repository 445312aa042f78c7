//! Exact dense dual simplex for `min c·x` s.t. `A x <= b`, `x >= 0`, `c >= 0`.
//!
//! Pivot rule: leaving row with the most negative right-hand side (lowest row
//! on ties), entering column by the dual ratio test (lowest column on ties).
//! After a run of pivots that leave the objective unchanged the rule switches
//! to lowest-basic-index selection, which cannot cycle.

use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{from_big, to_big, Rational};

const DEGENERATE_STREAK: usize = 50;

pub(crate) trait Exact: Clone + PartialOrd {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_rational(&self) -> Result<Rational>;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
}

impl Exact for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        *r
    }
    fn to_rational(&self) -> Result<Rational> {
        Ok(*self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
}

impl Exact for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        to_big(r)
    }
    fn to_rational(&self) -> Result<Rational> {
        from_big(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
}

/// Dense `<=` system in standard inequality form.
#[derive(Debug, Clone)]
pub(crate) struct LeSystem {
    pub num_vars: usize,
    pub rows: Vec<Vec<(usize, Rational)>>,
    pub rhs: Vec<Rational>,
    pub cost: Vec<Rational>,
}

pub(crate) struct Optimum {
    pub x: Vec<Rational>,
    pub objective: Rational,
}

struct Overflow;

/// Solves with 128-bit rationals, retrying with big rationals on overflow.
pub(crate) fn solve(sys: &LeSystem) -> Result<Optimum> {
    if sys.cost.iter().any(Signed::is_negative) {
        return Err(Error::Numerical("negative objective coefficient".into()));
    }
    match run::<Rational>(sys) {
        Ok(r) => r,
        Err(Overflow) => match run::<BigRational>(sys) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("big rationals do not overflow"),
        },
    }
}

fn ck<T>(v: Option<T>) -> std::result::Result<T, Overflow> {
    v.ok_or(Overflow)
}

fn run<T: Exact>(sys: &LeSystem) -> std::result::Result<Result<Optimum>, Overflow> {
    let m = sys.rows.len();
    let n = sys.num_vars;
    let width = n + m;
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m);
    for (i, row) in sys.rows.iter().enumerate() {
        let mut r = vec![T::zero(); width];
        for (j, v) in row {
            r[*j] = ck(r[*j].add(&T::from_rational(v)))?;
        }
        r[n + i] = T::one();
        tab.push(r);
    }
    let mut rhs: Vec<T> = sys.rhs.iter().map(T::from_rational).collect();
    let mut d: Vec<T> =
        (0..width).map(|j| if j < n { T::from_rational(&sys.cost[j]) } else { T::zero() }).collect();
    // objective value is -z where z tracks the rhs of the cost row
    let mut z = T::zero();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0usize;
    let mut streak = 0usize;
    let limit = 50 * (m + width) + 10_000;

    loop {
        let bland = streak >= DEGENERATE_STREAK;
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !rhs[i].is_negative() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let better = if bland { basis[i] < basis[l] } else { rhs[i] < rhs[l] };
                    Some(if better { i } else { l })
                }
            };
        }
        let Some(r) = leave else { break };
        let mut enter: Option<(usize, T)> = None;
        for j in 0..width {
            let a = &tab[r][j];
            if !a.is_negative() {
                continue;
            }
            let ratio = ck(d[j].div(&ck(T::zero().sub(a))?))?;
            enter = match enter {
                Some((q, best)) if best <= ratio => Some((q, best)),
                _ => Some((j, ratio)),
            };
        }
        let Some((q, ratio)) = enter else {
            return Ok(Err(Error::Numerical(format!("row {r} is infeasible"))));
        };
        let before = z.clone();
        pivot(&mut tab, &mut rhs, &mut d, &mut z, r, q)?;
        basis[r] = q;
        pivots += 1;
        streak = if ratio.is_zero() || z == before { streak + 1 } else { 0 };
        if pivots > limit {
            return Ok(Err(Error::Numerical("pivot limit exceeded".into())));
        }
    }

    let mut x = vec![<Rational as Zero>::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = match rhs[i].to_rational() {
                Ok(v) => v,
                Err(e) => return Ok(Err(e)),
            };
        }
    }
    let objective = match ck(T::zero().sub(&z))?.to_rational() {
        Ok(v) => v,
        Err(e) => return Ok(Err(e)),
    };
    Ok(Ok(Optimum { x, objective }))
}

fn pivot<T: Exact>(
    tab: &mut [Vec<T>],
    rhs: &mut [T],
    d: &mut [T],
    z: &mut T,
    r: usize,
    q: usize,
) -> std::result::Result<(), Overflow> {
    let p = tab[r][q].clone();
    let width = tab[r].len();
    let mut nz = Vec::new();
    for j in 0..width {
        if !tab[r][j].is_zero() {
            tab[r][j] = ck(tab[r][j].div(&p))?;
            nz.push(j);
        }
    }
    rhs[r] = ck(rhs[r].div(&p))?;
    let pivot_row = tab[r].clone();
    let pivot_rhs = rhs[r].clone();
    for i in 0..tab.len() {
        if i == r || tab[i][q].is_zero() {
            continue;
        }
        let f = tab[i][q].clone();
        for &j in &nz {
            tab[i][j] = ck(tab[i][j].sub(&ck(f.mul(&pivot_row[j]))?))?;
        }
        rhs[i] = ck(rhs[i].sub(&ck(f.mul(&pivot_rhs))?))?;
    }
    if !d[q].is_zero() {
        let f = d[q].clone();
        for &j in &nz {
            d[j] = ck(d[j].sub(&ck(f.mul(&pivot_row[j]))?))?;
        }
        *z = ck(z.sub(&ck(f.mul(&pivot_rhs))?))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn tiny_lp() {
        // min y  s.t.  y >= 4 - 2x, x <= 1  (as  -2x - y <= -4)
        let sys = LeSystem {
            num_vars: 2,
            rows: vec![vec![(0, int(-2)), (1, int(-1))], vec![(0, int(1))]],
            rhs: vec![int(-4), int(1)],
            cost: vec![int(0), int(1)],
        };
        let opt = solve(&sys).unwrap();
        assert_eq!(opt.objective, int(2));
        assert_eq!(opt.x, vec![int(1), int(2)]);
    }

    #[test]
    fn fractional_optimum() {
        // min y s.t. y >= 3 - 2x, y >= x, x,y >= 0
        let sys = LeSystem {
            num_vars: 2,
            rows: vec![vec![(0, int(-2)), (1, int(-1))], vec![(0, int(1)), (1, int(-1))]],
            rhs: vec![int(-3), int(0)],
            cost: vec![int(0), int(1)],
        };
        let opt = solve(&sys).unwrap();
        assert_eq!(opt.objective, int(1));
        assert_eq!(opt.x[0], ratio(1, 1));
    }

    #[test]
    fn big_fallback_matches() {
        let sys = LeSystem {
            num_vars: 2,
            rows: vec![vec![(0, int(-2)), (1, int(-1))], vec![(0, int(1))]],
            rhs: vec![int(-4), int(1)],
            cost: vec![int(0), int(1)],
        };
        let Ok(Ok(big)) = run::<BigRational>(&sys) else { panic!() };
        assert_eq!(big.objective, int(2));
    }
}
