//! Dense square supertropical matrices, permutations, and the special
//! constructor families.
//!
//! Matrices are immutable row-major grids of scalars with semiring-induced
//! addition and multiplication. Indices are 0-based internally; every textual
//! interface (parser, printer, generator words) speaks 1-based, matching the
//! usual mathematical convention, and the conversion happens only at that
//! boundary.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::TropElem;

/// A permutation of `{0, …, n−1}` stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Build from an image vector; rejects non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::domain(format!(
                    "image vector {images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[img] = true;
        }
        Ok(Perm(images))
    }

    /// The transposition swapping `i` and `j` (identity when `i = j`).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::shape(format!(
                "transposition indices ({i}, {j}) out of range for n = {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Ok(Perm(images))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Functional composition: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img] = i;
        }
        Perm(inv)
    }

    /// `true` for even permutations (an even number of inversions).
    pub fn is_even(&self) -> bool {
        let mut inversions = 0usize;
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Decompose into adjacent-style transpositions `(i j)` whose product
    /// (as permutation matrices, left-to-right) equals `P_self`.
    pub fn transposition_factors(&self) -> Vec<(usize, usize)> {
        // Selection sort on the image vector; each input swap post-composes a
        // transposition, so `self = τ_k ∘ … ∘ τ_1`, which is exactly the
        // left-to-right matrix product `P_{τ_1}···P_{τ_k}` under the rule
        // `P_π·P_σ = P_{σ∘π}`.
        let mut work: Vec<usize> = self.0.clone();
        let mut factors = Vec::new();
        for pos in 0..work.len() {
            if work[pos] != pos {
                let src = (pos + 1..work.len()).find(|&k| work[k] == pos).unwrap();
                work.swap(pos, src);
                factors.push((pos, src));
            }
        }
        factors
    }
}

impl fmt::Display for Perm {
    /// One-line image notation, 1-based: `[2 3 1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, img) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", img + 1)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|&i| i + 1))
    }
}

/// A dense `n×n` supertropical matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MatrixRepr", try_from = "MatrixRepr")]
pub struct Matrix {
    n: usize,
    entries: Vec<TropElem>,
}

impl Matrix {
    /// Build from explicit rows; all rows must have length `rows.len() ≥ 1`.
    pub fn from_rows(rows: Vec<Vec<TropElem>>) -> Result<Matrix> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::shape("matrix must have n ≥ 1"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::shape(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        Ok(Matrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> TropElem) -> Matrix {
        assert!(n >= 1, "matrix must have n ≥ 1");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    /// The multiplicative identity: `𝟙` diagonal, `𝟘` elsewhere.
    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, |i, j| if i == j { TropElem::one() } else { TropElem::Zero })
    }

    /// The all-`𝟘` matrix.
    pub fn zero(n: usize) -> Matrix {
        Matrix::from_fn(n, |_, _| TropElem::Zero)
    }

    /// Permutation matrix `P_π` with `𝟙` at `(i, π(i))`.
    pub fn permutation(perm: &Perm) -> Matrix {
        Matrix::from_fn(perm.n(), |i, j| {
            if perm.apply(i) == j {
                TropElem::one()
            } else {
                TropElem::Zero
            }
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: &[TropElem]) -> Result<Matrix> {
        if diag.is_empty() {
            return Err(Error::shape("matrix must have n ≥ 1"));
        }
        Ok(Matrix::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { TropElem::Zero }))
    }

    /// Gaussian matrix `E_{i,j}(a) = I + a·e_{i,j}` (0-based `i ≠ j`).
    pub fn gaussian(n: usize, i: usize, j: usize, a: TropElem) -> Result<Matrix> {
        if i == j {
            return Err(Error::domain(format!(
                "Gaussian generator requires i ≠ j, got ({}, {})",
                i + 1,
                j + 1
            )));
        }
        if i >= n || j >= n {
            return Err(Error::shape(format!(
                "Gaussian indices ({}, {}) out of range for n = {n}",
                i + 1,
                j + 1
            )));
        }
        let mut m = Matrix::identity(n);
        m.set(i, j, a);
        Ok(m)
    }

    /// Transposition matrix swapping coordinates `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Matrix> {
        Ok(Matrix::permutation(&Perm::transposition(n, i, j)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> TropElem {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: TropElem) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[TropElem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    fn check_same_n(&self, other: &Matrix, op: &str) -> Result<()> {
        if self.n != other.n {
            return Err(Error::shape(format!(
                "{op}: dimension mismatch ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Entrywise tropical sum.
    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_n(other, "add")?;
        Ok(Matrix::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j)))
    }

    /// Semiring-induced matrix product.
    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_n(other, "mul")?;
        let n = self.n;
        Ok(Matrix::from_fn(n, |i, j| {
            (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn scalar_mul(&self, s: TropElem) -> Matrix {
        Matrix::from_fn(self.n, |i, j| s * self.get(i, j))
    }

    /// Entrywise ghost map.
    pub fn nu(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(i, j).nu())
    }

    /// Matrix–vector product.
    pub fn mat_vec(&self, v: &[TropElem]) -> Result<Vec<TropElem>> {
        if v.len() != self.n {
            return Err(Error::shape(format!(
                "mat_vec: vector length {} does not match n = {}",
                v.len(),
                self.n
            )));
        }
        Ok((0..self.n)
            .map(|i| (0..self.n).map(|k| self.get(i, k) * v[k]).sum())
            .collect())
    }

    /// Entrywise ghost surpassing `self ⊨ other`.
    pub fn surpasses(&self, other: &Matrix) -> Result<bool> {
        self.check_same_n(other, "surpasses")?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a.ghost_surpass(b)))
    }

    /// Entrywise `ν(self) ≤ ν(other)`.
    pub fn nu_le(&self, other: &Matrix) -> Result<bool> {
        self.check_same_n(other, "nu_le")?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a.nu_le(b)))
    }

    /// Entrywise `ν(self) = ν(other)`.
    pub fn nu_eq(&self, other: &Matrix) -> Result<bool> {
        self.check_same_n(other, "nu_eq")?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a.nu_eq(b)))
    }

    /// Delete row `i` and column `j` (requires `n ≥ 2`).
    pub fn minor(&self, i: usize, j: usize) -> Matrix {
        assert!(self.n >= 2, "minor of a 1×1 matrix");
        Matrix::from_fn(self.n - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self.get(rr, cc)
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    /// Parse the line-oriented text format: `n` rows of `n` whitespace-
    /// separated scalar tokens. Reported positions are 1-based; the column
    /// is the character offset of the offending token.
    pub fn parse_text(text: &str) -> Result<Matrix> {
        let mut rows: Vec<Vec<TropElem>> = Vec::new();
        let mut row_lines: Vec<usize> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for (start, token) in tokens_with_offsets(line) {
                match token.parse::<TropElem>() {
                    Ok(e) => row.push(e),
                    Err(_) => {
                        return Err(Error::parse(
                            lineno + 1,
                            start + 1,
                            format!("invalid scalar token {token:?}"),
                        ))
                    }
                }
            }
            row_lines.push(lineno + 1);
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::parse(1, 1, "empty matrix"));
        }
        let n = rows.len();
        for (k, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::parse(
                    row_lines[k],
                    1,
                    format!("row has {} entries, expected {n} (matrix must be square)", row.len()),
                ));
            }
        }
        Matrix::from_rows(rows)
    }
}

fn tokens_with_offsets(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let mut end = start;
        while let Some(&(idx, ch)) = chars.peek() {
            if ch.is_whitespace() {
                break;
            }
            end = idx + ch.len_utf8();
            chars.next();
        }
        out.push((start, &line[start..end]));
    }
    out
}

impl fmt::Display for Matrix {
    /// Text format: one row per line, columns padded for alignment.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.n)
            .map(|j| tokens.iter().map(|row| row[j].len()).max().unwrap_or(1))
            .collect();
        for (i, row) in tokens.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, tok) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{tok:>width$}", width = widths[j])?;
            }
        }
        Ok(())
    }
}

/// Serialization image of a matrix: `{"n": …, "rows": [[token, …], …]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixRepr {
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

impl From<Matrix> for MatrixRepr {
    fn from(m: Matrix) -> MatrixRepr {
        MatrixRepr {
            n: m.n,
            rows: (0..m.n)
                .map(|i| (0..m.n).map(|j| m.get(i, j).to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixRepr> for Matrix {
    type Error = String;

    fn try_from(repr: MatrixRepr) -> std::result::Result<Matrix, String> {
        if repr.rows.len() != repr.n {
            return Err(format!("expected {} rows, found {}", repr.n, repr.rows.len()));
        }
        let mut rows = Vec::with_capacity(repr.n);
        for (i, row) in repr.rows.iter().enumerate() {
            if row.len() != repr.n {
                return Err(format!("row {} has {} entries, expected {}", i + 1, row.len(), repr.n));
            }
            let parsed: std::result::Result<Vec<TropElem>, String> = row
                .iter()
                .map(|tok| tok.parse::<TropElem>().map_err(|e| e.to_string()))
                .collect();
            rows.push(parsed?);
        }
        Matrix::from_rows(rows).map_err(|e| e.to_string())
    }
}

/// A generalized permutation matrix: a permutation track carrying tangible
/// (hence invertible) weights. These are exactly the classically invertible
/// supertropical matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenPerm {
    perm: Perm,
    weights: Vec<TropElem>,
}

impl GenPerm {
    /// Weight `weights[i]` sits at `(i, perm(i))`; all weights must be
    /// tangible.
    pub fn new(perm: Perm, weights: Vec<TropElem>) -> Result<GenPerm> {
        if weights.len() != perm.n() {
            return Err(Error::shape(format!(
                "generalized permutation: {} weights for n = {}",
                weights.len(),
                perm.n()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_tangible()) {
            return Err(Error::domain(format!(
                "generalized permutation weights must be tangible, got {w}"
            )));
        }
        Ok(GenPerm { perm, weights })
    }

    pub fn identity(n: usize) -> GenPerm {
        GenPerm {
            perm: Perm::identity(n),
            weights: vec![TropElem::one(); n],
        }
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn weights(&self) -> &[TropElem] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n(), |i, j| {
            if self.perm.apply(i) == j {
                self.weights[i]
            } else {
                TropElem::Zero
            }
        })
    }

    /// The classical inverse: `G·G⁻¹ = G⁻¹·G = I` exactly.
    pub fn inverse(&self) -> GenPerm {
        let inv = self.perm.inverse();
        let weights = (0..self.n())
            .map(|k| self.weights[inv.apply(k)].inv().expect("tangible weight"))
            .collect();
        GenPerm { perm: inv, weights }
    }

    /// The permanent of a generalized permutation matrix: the product of its
    /// weights (only its own track contributes).
    pub fn per(&self) -> TropElem {
        self.weights.iter().copied().product()
    }

    /// Recognize an invertible matrix: exactly one entry per row and column,
    /// all tangible.
    pub fn from_matrix(m: &Matrix) -> Option<GenPerm> {
        let n = m.n();
        let mut images = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i in 0..n {
            let mut found: Option<(usize, TropElem)> = None;
            for j in 0..n {
                let e = m.get(i, j);
                if !e.is_zero() {
                    if found.is_some() {
                        return None;
                    }
                    found = Some((j, e));
                }
            }
            let (j, w) = found?;
            if !w.is_tangible() {
                return None;
            }
            images.push(j);
            weights.push(w);
        }
        let perm = Perm::from_images(images).ok()?;
        Some(GenPerm { perm, weights })
    }
}
