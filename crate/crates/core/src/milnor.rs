//! Milnor number as the colength of the Jacobian ideal in the local ring at
//! the origin.
//!
//! `L(d) = dim Q[x,y] / (J + m^d)` is computed by linear algebra on the
//! truncations of `monomial * generator`. Once the degree-`d` contribution
//! `L(d+1) - L(d)` vanishes, Nakayama gives `m^d ⊂ J` locally and `L` is
//! constant from there on.

use crate::bivar;
use crate::error::{Error, Result};
use crate::poly::{Order, Polynomial};
use crate::rational::Q;
use num_traits::Zero;

pub const DEFAULT_DEGREE_BOUND: u32 = 64;

pub fn milnor_number(f: &Polynomial) -> Result<Order> {
    milnor_number_bounded(f, DEFAULT_DEGREE_BOUND)
}

pub fn milnor_number_bounded(f: &Polynomial, bound: u32) -> Result<Order> {
    if f.nvars() != 2 {
        return Err(Error::InvalidInput("germ must be in two variables".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotAGerm(crate::rational::fmt_q(&f.constant_term())));
    }
    let fx = f.derivative(0);
    let fy = f.derivative(1);
    if fx.is_zero() && fy.is_zero() {
        return Ok(Order::Infinite);
    }
    // a common factor of the partials through the origin is a curve of
    // critical points
    let g = bivar::gcd(&fx, &fy);
    if g.total_degree().unwrap_or(0) > 0 && g.constant_term().is_zero() {
        return Ok(Order::Infinite);
    }
    let gens = [fx, fy];
    let mut prev = colength(&gens, 1);
    let mut zero_run = 0;
    for d in 1..bound {
        let next = colength(&gens, d + 1);
        if next == prev {
            zero_run += 1;
            if zero_run == 2 {
                return Ok(Order::Finite(prev as u32));
            }
        } else {
            zero_run = 0;
        }
        prev = next;
    }
    Err(Error::DegreeBoundExceeded(bound))
}

fn monomials_below(d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for k in 0..d {
        for i in (0..=k).rev() {
            out.push((i, k - i));
        }
    }
    out
}

/// `dim Q[x,y] / (J + m^d)`.
pub fn colength(gens: &[Polynomial], d: u32) -> usize {
    let monos = monomials_below(d);
    let index = |i: u32, j: u32| -> usize {
        let k = i + j;
        (k * (k + 1) / 2 + (k - i)) as usize
    };
    let ncols = monos.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for g in gens {
        for &(a, b) in &monos {
            let mut row = vec![Q::zero(); ncols];
            let mut nz = false;
            for (m, c) in g.terms() {
                let (i, j) = (m.0[0] + a, m.0[1] + b);
                if i + j < d {
                    row[index(i, j)] = c.clone();
                    nz = true;
                }
            }
            if nz {
                rows.push(row);
            }
        }
    }
    ncols - rank(rows, ncols)
}

fn rank(mut rows: Vec<Vec<Q>>, ncols: usize) -> usize {
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][col].clone();
        for i in r + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] / &piv;
            for c in col..ncols {
                if !rows[r][c].is_zero() {
                    let v = &f * &rows[r][c];
                    rows[i][c] -= v;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_germ;

    fn mu(s: &str) -> Order {
        milnor_number(&parse_germ(s).unwrap()).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(mu("x^2 + y^2"), Order::Finite(1));
        assert_eq!(mu("y^2 - x^3"), Order::Finite(2));
        assert_eq!(mu("x^2*y"), Order::Infinite);
        assert_eq!(mu("x*y"), Order::Finite(1));
    }

    #[test]
    fn classical_values() {
        // A_k: y^2 - x^(k+1) has mu = k; D_4: x^2 y - y^3 has mu = 4; E_6: x^3 + y^4 has mu = 6
        assert_eq!(mu("y^2 - x^5"), Order::Finite(4));
        assert_eq!(mu("x^2*y - y^3"), Order::Finite(4));
        assert_eq!(mu("x^3 + y^4"), Order::Finite(6));
        // three lines
        assert_eq!(mu("x*(x-y)*(x-2*y)"), Order::Finite(4));
        // regular point
        assert_eq!(mu("x + y^2"), Order::Finite(0));
    }

    #[test]
    fn not_a_germ() {
        assert!(matches!(
            milnor_number(&parse_germ("1 + x").unwrap()),
            Err(Error::NotAGerm(_))
        ));
    }

    #[test]
    fn degree_bound_reported() {
        assert_eq!(
            milnor_number_bounded(&parse_germ("y^2 - x^9").unwrap(), 4),
            Err(Error::DegreeBoundExceeded(4))
        );
    }
}
