//! Dense matrices over a `Ring` context.
//!
//! Determinants and characteristic polynomials use Berkowitz's algorithm,
//! which is division-free and therefore valid over `Z/l^m`, `Omega[T]` and
//! any other commutative ring in this crate.

use crate::coeff::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::ring::{CommRing, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::filled(rows, cols, ring.zero())
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "matrix add shape");
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.add(x, y)).collect(),
    }
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "matrix sub shape");
    Matrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(x, y)| ring.sub(x, y)).collect(),
    }
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "matrix mul shape");
    let mut out = zeros(ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if ring.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let prod = ring.mul(x, b.get(k, j));
                let cur = ring.add(out.get(i, j), &prod);
                out.set(i, j, cur);
            }
        }
    }
    out
}

pub fn mul_vec<R: Ring>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(a.cols, v.len(), "matrix-vector shape");
    (0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
        })
        .collect()
}

pub fn pow<R: Ring>(ring: &R, a: &Matrix<R::Elem>, mut e: u64) -> Matrix<R::Elem> {
    let mut acc = identity(ring, a.rows);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(ring, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(ring, &base, &base);
        }
    }
    acc
}

/// Kronecker product `a (x) b`; block `(i, j)` is `a[i][j] * b`.
pub fn kron<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        ring.mul(a.get(i / b.rows, j / b.cols), b.get(i % b.rows, j % b.cols))
    })
}

/// Block-diagonal sum.
pub fn direct_sum<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::from_fn(a.rows + b.rows, a.cols + b.cols, |i, j| {
        match (i < a.rows, j < a.cols) {
            (true, true) => a.get(i, j).clone(),
            (false, false) => b.get(i - a.rows, j - a.cols).clone(),
            _ => ring.zero(),
        }
    })
}

/// Coefficients `[1, c_1, .., c_n]` of `det(t I - A) = t^n + c_1 t^(n-1) + ..`.
///
/// Read ascending, the same vector is `det(I - t A)`.
pub fn charpoly<R: CommRing>(ring: &R, a: &Matrix<R::Elem>) -> Vec<R::Elem> {
    assert!(a.is_square(), "charpoly of non-square matrix");
    let n = a.rows;
    if n == 0 {
        return vec![ring.one()];
    }
    let mut vect = vec![ring.one(), ring.neg(a.get(0, 0))];
    for i in 1..n {
        // leading i x i block A_i, row R = a[i][..i], column C = a[..i][i]
        let mut items = Vec::with_capacity(i + 2);
        items.push(ring.one());
        items.push(ring.neg(a.get(i, i)));
        let mut col: Vec<R::Elem> = (0..i).map(|r| a.get(r, i).clone()).collect();
        for step in 0..i {
            let rc = (0..i).fold(ring.zero(), |acc, k| {
                ring.add(&acc, &ring.mul(a.get(i, k), &col[k]))
            });
            items.push(ring.neg(&rc));
            if step + 1 < i {
                col = (0..i)
                    .map(|r| {
                        (0..i).fold(ring.zero(), |acc, k| {
                            ring.add(&acc, &ring.mul(a.get(r, k), &col[k]))
                        })
                    })
                    .collect();
            }
        }
        let mut next = Vec::with_capacity(i + 2);
        for j in 0..=i + 1 {
            let mut acc = ring.zero();
            for (k, v) in vect.iter().enumerate().take(j.min(i) + 1) {
                acc = ring.add(&acc, &ring.mul(&items[j - k], v));
            }
            next.push(acc);
        }
        vect = next;
    }
    vect
}

pub fn det<R: CommRing>(ring: &R, a: &Matrix<R::Elem>) -> R::Elem {
    let n = a.rows;
    let cp = charpoly(ring, a);
    if n % 2 == 0 {
        cp[n].clone()
    } else {
        ring.neg(&cp[n])
    }
}

/// Adjugate via Cayley-Hamilton: `adj(A) = (-1)^(n-1) (A^(n-1) + c_1 A^(n-2) + .. + c_(n-1) I)`.
pub fn adjugate<R: CommRing>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = a.rows;
    if n == 0 {
        return identity(ring, 0);
    }
    let cp = charpoly(ring, a);
    // Horner: B = I; B = B A + c_k I
    let mut b = identity(ring, n);
    for c in cp.iter().take(n).skip(1) {
        b = add(ring, &mul(ring, &b, a), &scale(ring, c, &identity(ring, n)));
    }
    if n % 2 == 0 {
        b.map(|x| ring.neg(x))
    } else {
        b
    }
}

/// The `b s x b s` block-cyclic matrix with `a` in the top-right corner and
/// identity blocks on the block subdiagonal.
pub fn block_cyclic<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: usize) -> Matrix<R::Elem> {
    assert!(a.is_square() && b >= 1);
    let s = a.rows;
    Matrix::from_fn(b * s, b * s, |i, j| {
        let (bi, bj) = (i / s, j / s);
        if bi == 0 && bj == b - 1 {
            a.get(i % s, j % s).clone()
        } else if bi == bj + 1 && i % s == j % s {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

/// Inverse over `Omega`; fails unless the determinant is a unit.
pub fn inverse(ring: &CoeffRing, a: &Matrix<Elem>) -> Result<Matrix<Elem>> {
    if !a.is_square() {
        return Err(Error::Shape("inverse of non-square matrix".into()));
    }
    let d_inv = ring.inv(&det(ring, a))?;
    Ok(scale(ring, &d_inv, &adjugate(ring, a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace(r: &CoeffRing, a: &Matrix<crate::coeff::Elem>) -> crate::coeff::Elem {
        let n = a.rows();
        if n == 0 {
            return r.one();
        }
        let mut acc = r.zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = laplace(r, &a.submatrix(&rows, &cols));
            let term = r.mul(a.get(0, j), &minor);
            acc = if j % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
        }
        acc
    }

    #[test]
    fn berkowitz_matches_laplace_on_small_matrices() {
        let r = CoeffRing::integers(5, 2).unwrap();
        let mut seed = 17u64;
        for n in 0..6 {
            for _ in 0..20 {
                let a = Matrix::from_fn(n, n, |_, _| {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    r.from_int((seed >> 33) as i64 % 25)
                });
                assert_eq!(det(&r, &a), laplace(&r, &a));
                let adj = adjugate(&r, &a);
                let prod = mul(&r, &a, &adj);
                let d = det(&r, &a);
                assert_eq!(prod, scale(&r, &d, &identity(&r, n)));
            }
        }
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of x^2 - 2x + 5: det(I - tA) = 1 - 2t + 5t^2
        let r = CoeffRing::integers(3, 2).unwrap();
        let a = Matrix::from_rows(vec![
            vec![r.from_int(0), r.from_int(-5)],
            vec![r.from_int(1), r.from_int(2)],
        ])
        .unwrap();
        assert_eq!(
            charpoly(&r, &a),
            vec![r.from_int(1), r.from_int(-2), r.from_int(5)]
        );
    }
}
