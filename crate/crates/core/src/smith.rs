//! Smith normal form over a Euclidean domain, with transforms.

use crate::cancel::{check, CancelToken};
use crate::error::Result;
use crate::ring::{identity, Euclidean, Mat};

/// `u * p * v = diag(d)`, padded with zeros to the shape of `p`.
#[derive(Debug, Clone)]
pub struct Smith<E> {
    pub u: Mat<E>,
    pub v: Mat<E>,
    /// Diagonal entries, `min(rows, cols)` of them; nonzero ones first,
    /// each dividing the next, normalized.
    pub diag: Vec<E>,
    pub rank: usize,
}

fn row_axpy<R: Euclidean>(r: &R, m: &mut Mat<R::Elem>, dst: usize, q: &R::Elem, src: usize) {
    // row dst -= q * row src
    for j in 0..m.cols {
        let s = m.get(src, j);
        if r.is_zero(s) {
            continue;
        }
        let v = r.sub(m.get(dst, j), &r.mul(q, s));
        m.set(dst, j, v);
    }
}

fn col_axpy<R: Euclidean>(r: &R, m: &mut Mat<R::Elem>, dst: usize, q: &R::Elem, src: usize) {
    for i in 0..m.rows {
        let s = m.get(i, src);
        if r.is_zero(s) {
            continue;
        }
        let v = r.sub(m.get(i, dst), &r.mul(q, s));
        m.set(i, dst, v);
    }
}

pub fn smith<R: Euclidean>(r: &R, p: &Mat<R::Elem>, cancel: Option<&CancelToken>) -> Result<Smith<R::Elem>> {
    let (m, n) = (p.rows, p.cols);
    let mut a = p.clone();
    let mut u = identity(r, m);
    let mut v = identity(r, n);
    let mut t = 0;
    while t < m.min(n) {
        check(cancel)?;
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = a.get(i, j);
                if !r.is_zero(x) && best.is_none_or(|(bi, bj)| r.size(x) < r.size(a.get(bi, bj))) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            check(cancel)?;
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..m {
                if r.is_zero(a.get(i, t)) {
                    continue;
                }
                let (q, _) = r.div_rem(a.get(i, t), a.get(t, t));
                row_axpy(r, &mut a, i, &q, t);
                row_axpy(r, &mut u, i, &q, t);
                if !r.is_zero(a.get(i, t)) {
                    smaller = Some((i, t));
                }
            }
            for j in t + 1..n {
                if r.is_zero(a.get(t, j)) {
                    continue;
                }
                let (q, _) = r.div_rem(a.get(t, j), a.get(t, t));
                col_axpy(r, &mut a, j, &q, t);
                col_axpy(r, &mut v, j, &q, t);
                if !r.is_zero(a.get(t, j)) {
                    smaller = Some((t, j));
                }
            }
            if let Some((i, j)) = smaller {
                // a remainder is smaller than the pivot: move it into place
                if i != t {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                }
                if j != t {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }
            // row and column cleared; enforce divisibility of the rest
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !r.divides(a.get(t, t), a.get(i, j)));
            match bad {
                Some((i, _)) => {
                    let one = r.neg(&r.one());
                    row_axpy(r, &mut a, t, &one, i);
                    row_axpy(r, &mut u, t, &one, i);
                }
                None => break,
            }
        }
        let nu = r.normal_unit(a.get(t, t));
        for j in 0..n {
            let x = r.mul(a.get(t, j), &nu);
            a.set(t, j, x);
        }
        for j in 0..m {
            let x = r.mul(u.get(t, j), &nu);
            u.set(t, j, x);
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| a.get(i, i).clone()).collect();
    Ok(Smith { u, v, diag, rank: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{Laurent, LaurentPid};
    use crate::ring::{mat_mul, Ring, ScalarPid};
    use crate::scalar::{int, CoeffRing, Scalar};

    fn zmat(rows: &[&[i64]]) -> Mat<Scalar> {
        let cols = rows.first().map_or(0, |r| r.len());
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols).unwrap()
    }

    fn check_smith<R: Euclidean>(r: &R, p: &Mat<R::Elem>) -> Smith<R::Elem> {
        let s = smith(r, p, None).unwrap();
        let d = mat_mul(r, &mat_mul(r, &s.u, p).unwrap(), &s.v).unwrap();
        for i in 0..d.rows {
            for j in 0..d.cols {
                if i == j {
                    assert_eq!(d.get(i, j), &s.diag[i]);
                } else {
                    assert!(r.is_zero(d.get(i, j)));
                }
            }
        }
        for w in s.diag.windows(2) {
            assert!(r.divides(&w[0], &w[1]));
        }
        s
    }

    #[test]
    fn integer_gcd_row() {
        let s = check_smith(&ScalarPid::new(CoeffRing::Z), &zmat(&[&[6, 4]]));
        assert_eq!(s.diag, vec![int(2)]);
    }

    #[test]
    fn integer_divisibility_chain() {
        let s = check_smith(&ScalarPid::new(CoeffRing::Z), &zmat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diag, vec![int(1), int(6)]);
        let s = check_smith(&ScalarPid::new(CoeffRing::Z), &zmat(&[&[0]]));
        assert_eq!(s.diag, vec![int(0)]);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn laurent_example() {
        let r = LaurentPid::new(CoeffRing::Q, "t").unwrap();
        let tm1 = Laurent { low: 0, coeffs: vec![int(-1), int(1)] };
        let p = Mat::from_rows(vec![vec![tm1.clone(), r.zero()], vec![r.zero(), r.embed_int(2)]], 2).unwrap();
        let s = check_smith(&r, &p);
        assert_eq!(s.diag, vec![r.one(), tm1]);
    }
}
