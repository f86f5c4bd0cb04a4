//! Row reduction over any [`Arith`] field.

use crate::polynomials::Arith;

/// A subspace held in reduced row echelon form, grown one vector at a time.
///
/// Rows are kept sorted by pivot column, each pivot entry is one and every
/// other row is zero in that column, so two spans are equal iff their
/// `rows()` are equal.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    ncols: usize,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Copy + Eq> Echelon<E> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<A: Arith<Elem = E>>(field: &A, ncols: usize, rows: impl IntoIterator<Item = Vec<E>>) -> Self {
        let mut ech = Echelon::new(ncols);
        for r in rows {
            ech.insert(field, r);
        }
        ech
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection onto the span along pivot columns; zero iff
    /// `v` lies in the span.
    pub fn reduce<A: Arith<Elem = E>>(&self, field: &A, mut v: Vec<E>) -> Vec<E> {
        debug_assert_eq!(v.len(), self.ncols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if field.is_zero(c) {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if !field.is_zero(y) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        v
    }

    pub fn contains<A: Arith<Elem = E>>(&self, field: &A, v: Vec<E>) -> bool {
        self.reduce(field, v).iter().all(|&x| field.is_zero(x))
    }

    /// Coefficients of `v` in terms of `rows()`, if `v` lies in the span.
    pub fn coordinates<A: Arith<Elem = E>>(&self, field: &A, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p]).collect();
        let residual = self.reduce(field, v.to_vec());
        residual.iter().all(|&x| field.is_zero(x)).then_some(coords)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert<A: Arith<Elem = E>>(&mut self, field: &A, v: Vec<E>) -> bool {
        let mut r = self.reduce(field, v);
        let Some(p) = r.iter().position(|&x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(r[p]);
        for x in r.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if field.is_zero(c) {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&r) {
                if !field.is_zero(y) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| self.pivots.binary_search(c).is_err()).collect()
    }
}

pub fn rank<A: Arith>(field: &A, ncols: usize, rows: &[Vec<A::Elem>]) -> usize {
    Echelon::from_rows(field, ncols, rows.iter().cloned()).rank()
}

/// Basis of `{x : M x = 0}` where `m` lists the rows of `M`.
pub fn kernel<A: Arith>(field: &A, ncols: usize, m: &[Vec<A::Elem>]) -> Vec<Vec<A::Elem>> {
    let ech = Echelon::from_rows(field, ncols, m.iter().cloned());
    ech.free_columns()
        .into_iter()
        .map(|f| {
            let mut x = vec![field.zero(); ncols];
            x[f] = field.one();
            for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
                x[p] = field.neg(row[f]);
            }
            x
        })
        .collect()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<A: Arith>(field: &A, m: &[Vec<A::Elem>]) -> Option<Vec<Vec<A::Elem>>> {
    let n = m.len();
    let augmented = m.iter().enumerate().map(|(i, row)| {
        assert_eq!(row.len(), n, "matrix must be square");
        let mut r = row.clone();
        r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
        r
    });
    let ech = Echelon::from_rows(field, 2 * n, augmented);
    if ech.pivots().iter().take(n).copied().ne(0..n) || ech.rank() != n {
        return None;
    }
    Some(ech.rows().iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<A: Arith>(field: &A, a: &[Vec<A::Elem>], b: &[Vec<A::Elem>]) -> Vec<Vec<A::Elem>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(field.zero(), |acc, (&x, brow)| field.add(acc, field.mul(x, brow[j]))))
                .collect()
        })
        .collect()
}
