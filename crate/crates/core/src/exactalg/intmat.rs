//! Dense matrices over Z with Hermite and Smith normal forms.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    /// The t x t circulant whose row k is `first` rotated left by k.
    pub fn circulant(first: &[BigInt]) -> Self {
        let t = first.len();
        let mut m = Self::zeros(t, t);
        for k in 0..t {
            for j in 0..t {
                m[(k, j)] = first[(k + j) % t].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn rank(&self) -> usize {
        hermite_normal_form(self).rank
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    // row[dst] += c * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    // col[dst] += c * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    // Replaces rows (a, b) by the unimodular combination
    // [p q; r s] * [row_a; row_b].
    fn combine_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = p * &x + q * &y;
            self.data[b * self.cols + j] = r * &x + s * &y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form `h = u * m`.
///
/// The nonzero rows of `h` come first, pivots are positive and strictly move
/// right, and entries above each pivot lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hermite {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        // gcd-combine every lower row into row r
        for i in r + 1..m.rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            // [x y; -b/g a/g] has determinant 1
            h.combine_rows(r, i, &x, &y, &-&bg, &ag);
            u.combine_rows(r, i, &x, &y, &-&bg, &ag);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let f = h[(i, c)].div_floor(&p);
            if !f.is_zero() {
                let nf = -f;
                h.add_row_multiple(i, r, &nf);
                u.add_row_multiple(i, r, &nf);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, u, rank: r, pivots }
}

/// `u * m * v = s`, `s` diagonal with a divisibility chain and nonnegative
/// entries, `u` and `v` unimodular.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (nr, nc) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut v = IntMatrix::identity(nc);
    for p in 0..nr.min(nc) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in p..nr {
                for j in p..nc {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if s[(bi, bj)].abs() <= s[(i, j)].abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish_snf(u, s, v);
            };
            s.swap_rows(p, bi);
            u.swap_rows(p, bi);
            s.swap_cols(p, bj);
            v.swap_cols(p, bj);

            let piv = s[(p, p)].clone();
            let mut dirty = false;
            for i in p + 1..nr {
                let f = s[(i, p)].div_floor(&piv);
                if !f.is_zero() {
                    let nf = -f;
                    s.add_row_multiple(i, p, &nf);
                    u.add_row_multiple(i, p, &nf);
                }
                dirty |= !s[(i, p)].is_zero();
            }
            for j in p + 1..nc {
                let f = s[(p, j)].div_floor(&piv);
                if !f.is_zero() {
                    let nf = -f;
                    s.add_col_multiple(j, p, &nf);
                    v.add_col_multiple(j, p, &nf);
                }
                dirty |= !s[(p, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let mut offender = None;
            'scan: for i in p + 1..nr {
                for j in p + 1..nc {
                    if !(&s[(i, j)] % &piv).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(p, i, &one);
                    u.add_row_multiple(p, i, &one);
                }
                None => break,
            }
        }
    }
    finish_snf(u, s, v)
}

fn finish_snf(mut u: IntMatrix, mut s: IntMatrix, v: IntMatrix) -> SnfDecomposition {
    for i in 0..s.rows.min(s.cols) {
        if s[(i, i)].is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }
    SnfDecomposition { u, s, v }
}

/// A basis of the lattice `{ v in Z^cols : m v = 0 }`.
///
/// Vectors are primitive, form a Hermite basis with respect to reversed
/// coordinate order (so support is pushed towards low indices) and have a
/// positive first nonzero entry.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = m.cols;
    if n == 0 {
        return Vec::new();
    }
    let herm = hermite_normal_form(&m.transpose());
    let raw: Vec<Vec<BigInt>> = (herm.rank..n).map(|i| herm.u.row(i).to_vec()).collect();
    if raw.is_empty() {
        return raw;
    }
    // canonicalise: HNF of the kernel lattice in reversed coordinates
    let reversed: Vec<Vec<BigInt>> = raw.iter().map(|r| r.iter().rev().cloned().collect()).collect();
    let hk = hermite_normal_form(&IntMatrix::from_rows(n, &reversed));
    (0..hk.rank)
        .map(|i| {
            let mut v: Vec<BigInt> = hk.h.row(i).iter().rev().cloned().collect();
            if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                v.iter_mut().for_each(|x| *x = -&*x);
            }
            v
        })
        .collect()
}

/// gcd of the entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
