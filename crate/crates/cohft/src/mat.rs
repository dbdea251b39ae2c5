//! Dense matrices over a generic ring context, plus truncated matrix series
//! in one formal variable z (the loop-group elements of the quantization
//! machinery).

use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub n: usize,
    pub m: usize,
    pub data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.m + j]
    }
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.m + j]
    }
}

pub fn mat_zero<R: Ring>(r: &R, n: usize, m: usize) -> Mat<R::El> {
    Mat {
        n,
        m,
        data: vec![r.zero(); n * m],
    }
}

pub fn mat_id<R: Ring>(r: &R, n: usize) -> Mat<R::El> {
    let mut a = mat_zero(r, n, n);
    for i in 0..n {
        *a.at_mut(i, i) = r.one();
    }
    a
}

pub fn mat_add<R: Ring>(r: &R, a: &Mat<R::El>, b: &Mat<R::El>) -> Mat<R::El> {
    assert_eq!((a.n, a.m), (b.n, b.m));
    Mat {
        n: a.n,
        m: a.m,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| r.add(x, y))
            .collect(),
    }
}

pub fn mat_sub<R: Ring>(r: &R, a: &Mat<R::El>, b: &Mat<R::El>) -> Mat<R::El> {
    assert_eq!((a.n, a.m), (b.n, b.m));
    Mat {
        n: a.n,
        m: a.m,
        data: a
            .data
            .iter()
            .zip(&b.data)
            .map(|(x, y)| r.sub(x, y))
            .collect(),
    }
}

pub fn mat_neg<R: Ring>(r: &R, a: &Mat<R::El>) -> Mat<R::El> {
    Mat {
        n: a.n,
        m: a.m,
        data: a.data.iter().map(|x| r.neg(x)).collect(),
    }
}

pub fn mat_scale<R: Ring>(r: &R, a: &Mat<R::El>, c: &R::El) -> Mat<R::El> {
    Mat {
        n: a.n,
        m: a.m,
        data: a.data.iter().map(|x| r.mul(x, c)).collect(),
    }
}

pub fn mat_mul<R: Ring>(r: &R, a: &Mat<R::El>, b: &Mat<R::El>) -> Mat<R::El> {
    assert_eq!(a.m, b.n);
    let mut out = mat_zero(r, a.n, b.m);
    for i in 0..a.n {
        for k in 0..a.m {
            let aik = a.at(i, k);
            if r.is_zero(aik) {
                continue;
            }
            for j in 0..b.m {
                let p = r.mul(aik, b.at(k, j));
                let e = out.at_mut(i, j);
                *e = r.add(e, &p);
            }
        }
    }
    out
}

pub fn mat_vec<R: Ring>(r: &R, a: &Mat<R::El>, v: &[R::El]) -> Vec<R::El> {
    assert_eq!(a.m, v.len());
    (0..a.n)
        .map(|i| r.sum((0..a.m).map(|j| r.mul(a.at(i, j), &v[j]))))
        .collect()
}

pub fn mat_transpose<T: Clone>(a: &Mat<T>) -> Mat<T> {
    let mut data = Vec::with_capacity(a.n * a.m);
    for j in 0..a.m {
        for i in 0..a.n {
            data.push(a.at(i, j).clone());
        }
    }
    Mat {
        n: a.m,
        m: a.n,
        data,
    }
}

/// Gauss-Jordan inverse; `None` when no unit pivot can be found.
pub fn mat_inv<R: Ring>(r: &R, a: &Mat<R::El>) -> Option<Mat<R::El>> {
    assert_eq!(a.n, a.m);
    let n = a.n;
    let mut left = a.clone();
    let mut right = mat_id(r, n);
    for col in 0..n {
        let pivot_row = (col..n).find_map(|i| {
            r.try_inv(left.at(i, col)).map(|inv| (i, inv))
        });
        let (pi, pinv) = pivot_row?;
        if pi != col {
            for j in 0..n {
                left.data.swap(col * n + j, pi * n + j);
                right.data.swap(col * n + j, pi * n + j);
            }
        }
        for j in 0..n {
            *left.at_mut(col, j) = r.mul(left.at(col, j), &pinv);
            *right.at_mut(col, j) = r.mul(right.at(col, j), &pinv);
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = left.at(i, col).clone();
            if r.is_zero(&f) {
                continue;
            }
            for j in 0..n {
                let l = r.sub(left.at(i, j), &r.mul(&f, left.at(col, j)));
                *left.at_mut(i, j) = l;
                let rr = r.sub(right.at(i, j), &r.mul(&f, right.at(col, j)));
                *right.at_mut(i, j) = rr;
            }
        }
    }
    Some(right)
}

/// Solve A x = b for square A (unit pivots required).
pub fn mat_solve<R: Ring>(r: &R, a: &Mat<R::El>, b: &[R::El]) -> Option<Vec<R::El>> {
    let inv = mat_inv(r, a)?;
    Some(mat_vec(r, &inv, b))
}

/// Characteristic polynomial coefficients [c_0, ..., c_n] with
/// det(xI - A) = sum c_k x^k, via Faddeev-LeVerrier (divisions only by
/// integers, so any Q-algebra works).
pub fn charpoly<R: Ring>(r: &R, a: &Mat<R::El>) -> Vec<R::El> {
    let n = a.n;
    let mut coeffs = vec![r.zero(); n + 1];
    coeffs[n] = r.one();
    let mut mk = mat_zero(r, n, n); // M_0 = 0
    let mut ck = r.one();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let am = mat_mul(r, a, &mk);
        let mut m_next = am;
        for i in 0..n {
            let e = m_next.at_mut(i, i);
            *e = r.add(e, &ck);
        }
        // c_{n-k} = -tr(A M_k)/k
        let am2 = mat_mul(r, a, &m_next);
        let tr = r.sum((0..n).map(|i| am2.at(i, i).clone()));
        let kinv = r
            .try_inv(&r.from_i64(k as i64))
            .expect("ring must contain 1/k");
        ck = r.neg(&r.mul(&tr, &kinv));
        coeffs[n - k] = ck.clone();
        mk = m_next;
    }
    coeffs
}

/// Truncated matrix series sum_k M_k z^k, orders 0..len-1.
#[derive(Clone, Debug, PartialEq)]
pub struct MatSeries<T> {
    pub coeffs: Vec<Mat<T>>,
}

impl<T: Clone> MatSeries<T> {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
    pub fn dim(&self) -> usize {
        self.coeffs[0].n
    }
    pub fn coeff(&self, k: usize) -> Option<&Mat<T>> {
        self.coeffs.get(k)
    }
}

pub fn ms_identity<R: Ring>(r: &R, n: usize, order: usize) -> MatSeries<R::El> {
    let mut coeffs = vec![mat_zero(r, n, n); order];
    coeffs[0] = mat_id(r, n);
    MatSeries { coeffs }
}

pub fn ms_mul<R: Ring>(r: &R, a: &MatSeries<R::El>, b: &MatSeries<R::El>) -> MatSeries<R::El> {
    let order = a.order().min(b.order());
    let n = a.dim();
    let mut coeffs = vec![mat_zero(r, n, n); order];
    for i in 0..a.order().min(order) {
        for j in 0..b.order() {
            if i + j >= order {
                break;
            }
            let p = mat_mul(r, &a.coeffs[i], &b.coeffs[j]);
            coeffs[i + j] = mat_add(r, &coeffs[i + j], &p);
        }
    }
    MatSeries { coeffs }
}

/// Inverse of a matrix series whose z^0 coefficient is invertible.
pub fn ms_inv<R: Ring>(r: &R, a: &MatSeries<R::El>) -> Option<MatSeries<R::El>> {
    let order = a.order();
    let n = a.dim();
    let a0_inv = mat_inv(r, &a.coeffs[0])?;
    let mut coeffs = vec![mat_zero(r, n, n); order];
    coeffs[0] = a0_inv.clone();
    for k in 1..order {
        // B_k = -A_0^{-1} sum_{i=1..k} A_i B_{k-i}
        let mut s = mat_zero(r, n, n);
        for i in 1..=k {
            if i >= a.order() {
                break;
            }
            s = mat_add(r, &s, &mat_mul(r, &a.coeffs[i], &coeffs[k - i]));
        }
        coeffs[k] = mat_neg(r, &mat_mul(r, &a0_inv, &s));
    }
    Some(MatSeries { coeffs })
}

/// Substitute z -> c*z.
pub fn ms_rescale_z<R: Ring>(r: &R, a: &MatSeries<R::El>, c: &R::El) -> MatSeries<R::El> {
    let mut coeffs = Vec::with_capacity(a.order());
    let mut pw = r.one();
    for k in 0..a.order() {
        coeffs.push(mat_scale(r, &a.coeffs[k], &pw));
        pw = r.mul(&pw, c);
    }
    MatSeries { coeffs }
}

/// exp of a nilpotent-in-z series (zero z^0 coefficient).
pub fn ms_exp<R: Ring>(r: &R, a: &MatSeries<R::El>) -> MatSeries<R::El> {
    let n = a.dim();
    let order = a.order();
    assert!(
        a.coeffs[0].data.iter().all(|x| r.is_zero(x)),
        "ms_exp needs vanishing z^0 part"
    );
    let mut acc = ms_identity(r, n, order);
    let mut pw = ms_identity(r, n, order);
    for k in 1..order as i64 {
        pw = ms_mul(r, &pw, a);
        if pw.coeffs.iter().all(|m| m.data.iter().all(|x| r.is_zero(x))) {
            break;
        }
        let mut fact = r.one();
        for i in 2..=k {
            fact = r.mul(&fact, &r.from_i64(i));
        }
        let term = MatSeries {
            coeffs: pw
                .coeffs
                .iter()
                .map(|m| mat_scale(r, m, &r.try_inv(&fact).unwrap()))
                .collect(),
        };
        for (c, t) in acc.coeffs.iter_mut().zip(&term.coeffs) {
            *c = mat_add(r, c, t);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_i, QQ};

    #[test]
    fn inverse_roundtrip() {
        let r = QQ;
        let a = Mat {
            n: 2,
            m: 2,
            data: vec![rat_i(2), rat_i(1), rat_i(5), rat_i(3)],
        };
        let inv = mat_inv(&r, &a).unwrap();
        assert_eq!(mat_mul(&r, &a, &inv), mat_id(&r, 2));
    }

    #[test]
    fn charpoly_companion() {
        // companion matrix of x^3 - 2x - 5
        let r = QQ;
        let a = Mat {
            n: 3,
            m: 3,
            data: vec![
                rat_i(0),
                rat_i(0),
                rat_i(5),
                rat_i(1),
                rat_i(0),
                rat_i(2),
                rat_i(0),
                rat_i(1),
                rat_i(0),
            ],
        };
        let cp = charpoly(&r, &a);
        assert_eq!(cp, vec![rat_i(-5), rat_i(-2), rat_i(0), rat_i(1)]);
    }

    #[test]
    fn matrix_series_inverse() {
        let r = QQ;
        let mut a = ms_identity(&r, 2, 4);
        *a.coeffs[1].at_mut(0, 1) = rat_i(3);
        *a.coeffs[2].at_mut(1, 0) = rat_i(-1);
        let b = ms_inv(&r, &a).unwrap();
        let p = ms_mul(&r, &a, &b);
        assert_eq!(p, ms_identity(&r, 2, 4));
    }
}
