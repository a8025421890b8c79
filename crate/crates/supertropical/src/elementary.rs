//! Elementary generators and words: transpositions, diagonal multipliers,
//! and Gaussians `E_{i,j}(a) = I + a·e_{i,j}`; rewriting Gaussian words into
//! lower·upper form; the singularizing Gaussian for non-invertible
//! unit-permanent matrices; the correction word `E` with `E·A = A^∇∇`; a
//! triangular-split heuristic; and the four-piece bridge
//! `E₁·A·E₂ = E₃·B·E₄` between any two nonsingular matrices.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::{factor_out, Side};
use crate::determinant::per;
use crate::error::{Error, Result};
use crate::matrix::{GenPerm, Matrix};
use crate::nabla::nabla2;
use crate::semiring::TropElem;

/// One elementary generator. Transpositions and diagonal multipliers are
/// invertible; Gaussians are the interesting definite ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ElemGen {
    /// Swap coordinates `i` and `j`.
    Transposition { i: usize, j: usize },
    /// Scale coordinate `i` by a tangible `a`.
    DiagMult { i: usize, a: TropElem },
    /// `E_{i,j}(a) = I + a·e_{i,j}` with `i ≠ j`.
    Gaussian { i: usize, j: usize, a: TropElem },
}

impl ElemGen {
    pub fn transposition(i: usize, j: usize) -> Result<ElemGen> {
        if i == j {
            return Err(Error::domain("transposition requires i ≠ j"));
        }
        Ok(ElemGen::Transposition { i, j })
    }

    pub fn diag_mult(i: usize, a: TropElem) -> Result<ElemGen> {
        if !a.is_tangible() {
            return Err(Error::domain(format!(
                "diagonal multiplier must be tangible (invertible), got {a}"
            )));
        }
        Ok(ElemGen::DiagMult { i, a })
    }

    pub fn gaussian(i: usize, j: usize, a: TropElem) -> Result<ElemGen> {
        if i == j {
            return Err(Error::domain("Gaussian generator requires i ≠ j"));
        }
        Ok(ElemGen::Gaussian { i, j, a })
    }

    /// Expand into an `n × n` matrix.
    pub fn to_matrix(&self, n: usize) -> Result<Matrix> {
        match *self {
            ElemGen::Transposition { i, j } => Matrix::transposition(n, i, j),
            ElemGen::DiagMult { i, a } => {
                if i >= n {
                    return Err(Error::shape(format!(
                        "diagonal index {} out of range for n = {n}",
                        i + 1
                    )));
                }
                let mut m = Matrix::identity(n);
                m.set(i, i, a);
                Ok(m)
            }
            ElemGen::Gaussian { i, j, a } => Matrix::gaussian(n, i, j, a),
        }
    }
}

impl fmt::Display for ElemGen {
    /// 1-based text form: `T i j` | `D i a` | `G i j a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ElemGen::Transposition { i, j } => write!(f, "T {} {}", i + 1, j + 1),
            ElemGen::DiagMult { i, a } => write!(f, "D {} {a}", i + 1),
            ElemGen::Gaussian { i, j, a } => write!(f, "G {} {} {a}", i + 1, j + 1),
        }
    }
}

impl FromStr for ElemGen {
    type Err = Error;

    fn from_str(s: &str) -> Result<ElemGen> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let bad = |msg: String| Error::parse(1, 1, msg);
        let index = |tok: &str| -> Result<usize> {
            let k: usize = tok
                .parse()
                .map_err(|_| bad(format!("invalid index token {tok:?}")))?;
            if k == 0 {
                return Err(bad("indices are 1-based".into()));
            }
            Ok(k - 1)
        };
        let scalar = |tok: &str| -> Result<TropElem> {
            tok.parse()
                .map_err(|_| bad(format!("invalid scalar token {tok:?}")))
        };
        match tokens.as_slice() {
            ["T", i, j] => ElemGen::transposition(index(i)?, index(j)?),
            ["D", i, a] => ElemGen::diag_mult(index(i)?, scalar(a)?),
            ["G", i, j, a] => ElemGen::gaussian(index(i)?, index(j)?, scalar(a)?),
            _ => Err(bad(format!(
                "expected `T i j`, `D i a`, or `G i j a`, got {s:?}"
            ))),
        }
    }
}

/// An ordered word of elementary generators; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct ElemWord(pub Vec<ElemGen>);

impl ElemWord {
    pub fn new(gens: Vec<ElemGen>) -> ElemWord {
        ElemWord(gens)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn gens(&self) -> &[ElemGen] {
        &self.0
    }

    /// Parse the line-oriented format: one generator per line, blank lines
    /// skipped. Errors carry 1-based line numbers.
    pub fn parse_text(text: &str) -> Result<ElemWord> {
        let mut gens = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match line.parse::<ElemGen>() {
                Ok(g) => gens.push(g),
                Err(Error::Parse { col, msg, .. }) => {
                    return Err(Error::parse(lineno + 1, col, msg))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(ElemWord(gens))
    }

    /// Largest index mentioned, as a lower bound for the ambient dimension.
    pub fn min_dimension(&self) -> usize {
        self.0
            .iter()
            .map(|g| match *g {
                ElemGen::Transposition { i, j } | ElemGen::Gaussian { i, j, .. } => {
                    i.max(j) + 1
                }
                ElemGen::DiagMult { i, .. } => i + 1,
            })
            .max()
            .unwrap_or(1)
    }
}

impl fmt::Display for ElemWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Left-to-right product of the word's expansions at dimension `n`.
pub fn word_product(w: &ElemWord, n: usize) -> Result<Matrix> {
    let mut acc = Matrix::identity(n);
    for g in &w.0 {
        acc = acc.try_mul(&g.to_matrix(n)?)?;
    }
    Ok(acc)
}

/// Rewrite a word of Gaussians into `(lower word, upper word)` with the same
/// product, using only product-preserving relations:
///
/// * disjoint-index commutation (`i ≠ l`, `j ≠ k`);
/// * reverse-pair commutation `E_{i,j}(a)E_{j,i}(b) = E_{j,i}(b)E_{i,j}(a)`,
///   valid only for `ab <ν 𝟙`;
/// * the chain relations
///   `E_{i,j}(a)E_{j,k}(b) = E_{i,k}(ab)E_{j,k}(b)E_{i,j}(a)` (`k < i < j`)
///   and `= E_{j,k}(b)E_{i,j}(a)E_{i,k}(ab)` (`i < k < j`);
/// * merging adjacent same-position Gaussians into `E_{i,j}(a + b)`.
///
/// Returns `None` when an adjacency has no applicable relation (a reverse
/// pair with `ab ≥ν 𝟙`, or the chain `E_{i,j}(a)E_{k,i}(b)` with `j ≠ k`,
/// for which no rewriting rule exists and whose products can genuinely fall
/// outside lower·upper form), or when the step budget `n²·(|w|+1)` runs out.
/// The product is re-verified after every rewrite.
pub fn steinberg_normal_form(
    w: &ElemWord,
    n: usize,
) -> Result<Option<(ElemWord, ElemWord)>> {
    let mut gens: Vec<(usize, usize, TropElem)> = Vec::with_capacity(w.len());
    for g in &w.0 {
        match *g {
            ElemGen::Gaussian { i, j, a } => gens.push((i, j, a)),
            _ => {
                return Err(Error::domain(
                    "lower·upper rewriting is defined for words of Gaussian \
                     generators only",
                ))
            }
        }
    }
    let target = word_product(w, n)?;
    // E_{i,j}(𝟘) = I contributes nothing.
    gens.retain(|g| !g.2.is_zero());

    let budget = n * n * (w.len() + 1);
    let mut steps = 0usize;
    loop {
        // Normalize: merge adjacent generators at the same position.
        let mut k = 0;
        while k + 1 < gens.len() {
            if gens[k].0 == gens[k + 1].0 && gens[k].1 == gens[k + 1].1 {
                gens[k].2 = gens[k].2 + gens[k + 1].2;
                gens.remove(k + 1);
            } else {
                k += 1;
            }
        }

        let upper = |g: &(usize, usize, TropElem)| g.0 < g.1;
        let Some(p) = (0..gens.len().saturating_sub(1))
            .find(|&p| upper(&gens[p]) && !upper(&gens[p + 1]))
        else {
            let split = gens.iter().position(|g| upper(g)).unwrap_or(gens.len());
            let to_word = |gs: &[(usize, usize, TropElem)]| {
                ElemWord(
                    gs.iter()
                        .map(|&(i, j, a)| ElemGen::Gaussian { i, j, a })
                        .collect(),
                )
            };
            return Ok(Some((to_word(&gens[..split]), to_word(&gens[split..]))));
        };

        steps += 1;
        if steps > budget {
            return Ok(None);
        }

        let (i, j, a) = gens[p];
        let (k2, l, b) = gens[p + 1];
        let replacement: Vec<(usize, usize, TropElem)> = if (k2, l) == (j, i) {
            if (a * b).nu_lt(&TropElem::one()) {
                vec![(k2, l, b), (i, j, a)]
            } else {
                // No relation covers a reverse pair at or above 𝟙.
                return Ok(None);
            }
        } else if k2 == j {
            if l < i {
                vec![(i, l, a * b), (j, l, b), (i, j, a)]
            } else {
                vec![(j, l, b), (i, j, a), (i, l, a * b)]
            }
        } else if l == i {
            // Upper-then-lower with the lower feeding the upper's row:
            // no rewriting rule exists.
            return Ok(None);
        } else {
            vec![(k2, l, b), (i, j, a)]
        };
        gens.splice(p..p + 2, replacement);

        let check = word_product(
            &ElemWord(
                gens.iter()
                    .map(|&(i, j, a)| ElemGen::Gaussian { i, j, a })
                    .collect(),
            ),
            n,
        )?;
        if check != target {
            return Err(Error::internal(
                "rewriting step changed the word product; this is a bug",
            ));
        }
    }
}

/// For a non-invertible `A` with `per(A) = 𝟙`, produce a Gaussian `E` whose
/// product with the definite part `A₁` of `A` is singular, together with the
/// factorization it refers to: `A = P·A₁`, `per(E·A₁) = 𝟙^ν` exactly.
pub fn sns_witness_with_part(a: &Matrix) -> Result<(ElemGen, GenPerm, Matrix)> {
    if per(a)? != TropElem::one() {
        return Err(Error::domain(
            "the singularizing Gaussian requires per(A) = 𝟙",
        ));
    }
    if GenPerm::from_matrix(a).is_some() {
        return Err(Error::witness(
            "invertible matrices admit no singularizing Gaussian: products \
             with them preserve nonsingularity",
        ));
    }
    let (p, a1) = factor_out(a, Side::Left)?;
    let n = a.n();
    let ghost_unit = TropElem::one().nu();
    for i in 0..n {
        for j in 0..n {
            if i == j || a1.get(i, j).is_zero() {
                continue;
            }
            let gen = ElemGen::Gaussian { i: j, j: i, a: a1.get(i, j).inv()? };
            let product = gen.to_matrix(n)?.try_mul(&a1)?;
            if per(&product)? == ghost_unit {
                return Ok((gen, p, a1));
            }
        }
    }
    Err(Error::internal(format!(
        "no off-diagonal edge of the definite part singularizes\n{a1}"
    )))
}

/// The singularizing Gaussian alone; see [`sns_witness_with_part`].
pub fn sns_witness(a: &Matrix) -> Result<ElemGen> {
    Ok(sns_witness_with_part(a)?.0)
}

/// Gaussian word carrying the entries of `D = A₁^∇∇` that strictly grew,
/// lower positions first and uppers adjacent to the matrix, so that
/// `word_product(W)·A₁ = D` exactly (verified). `A₁` must be definite.
fn definite_correction_word(a1: &Matrix) -> Result<(ElemWord, Matrix)> {
    let d = nabla2(a1)?;
    let n = a1.n();
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && d.get(i, j) != a1.get(i, j) {
                let gen = ElemGen::Gaussian { i, j, a: d.get(i, j) };
                if i > j {
                    lowers.push(gen);
                } else {
                    uppers.push(gen);
                }
            }
        }
    }
    lowers.extend(uppers);
    let word = ElemWord(lowers);
    if word_product(&word, n)?.try_mul(a1)? != d {
        return Err(Error::internal(format!(
            "correction word failed to reproduce the ∇∇-closure of\n{a1}"
        )));
    }
    Ok((word, d))
}

/// Conjugate each Gaussian by an invertible `P`:
/// `P·E_{i,j}(a)·P⁻¹ = E_{π⁻¹(i),π⁻¹(j)}(w_{π⁻¹(i)}·a·w_{π⁻¹(j)}⁻¹)`.
fn conjugate_gaussian_word(w: &ElemWord, p: &GenPerm) -> Result<ElemWord> {
    let pinv = p.perm().inverse();
    let gens = w
        .0
        .iter()
        .map(|g| match *g {
            ElemGen::Gaussian { i, j, a } => {
                let ni = pinv.apply(i);
                let nj = pinv.apply(j);
                Ok(ElemGen::Gaussian {
                    i: ni,
                    j: nj,
                    a: p.weights()[ni] * a * p.weights()[nj].inv()?,
                })
            }
            _ => Err(Error::domain(
                "only Gaussian words support generalized-permutation conjugation",
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ElemWord(gens))
}

/// A Gaussian word `W` with `word_product(W)·A = A^∇∇` exactly, for
/// nonsingular `A` (verified; empty when `A^∇∇ = A`, e.g. for any
/// quasi-identity).
///
/// The word is built on the definite part of `A = P·A₁` and conjugated
/// back through `P`, using `(P·A₁)^∇∇ = P·A₁^∇∇`.
pub fn ed_factor(a: &Matrix) -> Result<ElemWord> {
    let (p, a1) = factor_out(a, Side::Left)?;
    let (word, _) = definite_correction_word(&a1)?;
    let conj = conjugate_gaussian_word(&word, &p)?;
    if word_product(&conj, a.n())?.try_mul(a)? != nabla2(a)? {
        return Err(Error::internal(format!(
            "conjugated correction word failed to reproduce the ∇∇-closure \
             of\n{a}"
        )));
    }
    Ok(conj)
}

/// Split a matrix into its triangular halves with `𝟙` diagonal and return
/// them only when their product reproduces `M` exactly. A heuristic: meant
/// for definite matrices, and two-track patterns (among others) fail it.
pub fn lu_attempt(m: &Matrix) -> Option<(Matrix, Matrix)> {
    let n = m.n();
    let one = TropElem::one();
    let l = Matrix::from_fn(n, |i, j| {
        if i == j {
            one
        } else if i > j {
            m.get(i, j)
        } else {
            TropElem::Zero
        }
    });
    let u = Matrix::from_fn(n, |i, j| {
        if i == j {
            one
        } else if i < j {
            m.get(i, j)
        } else {
            TropElem::Zero
        }
    });
    if l.try_mul(&u).expect("same size") == *m {
        Some((l, u))
    } else {
        None
    }
}

/// One side's `∇∇`-closure in the bridge, with an elementary decomposition
/// when the triangular split succeeds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeSide {
    /// The closure matrix itself (`B^∇∇` or `A^∇∇`).
    pub matrix: Matrix,
    /// An elementary word whose product equals `matrix`, when one was found.
    pub word: Option<ElemWord>,
    /// Whether `word` is present.
    pub fully_elementary: bool,
}

/// The four pieces of `E₁·A·E₂ = E₃·B·E₄`; both sides equal `common`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bridge {
    /// Gaussian word with `word_product(e1)·A = A^∇∇`.
    pub e1: ElemWord,
    /// `B^∇∇`, optionally decomposed.
    pub e2: BridgeSide,
    /// `A^∇∇`, optionally decomposed.
    pub e3: BridgeSide,
    /// Gaussian word with `B·word_product(e4) = B^∇∇`.
    pub e4: ElemWord,
    /// The common value `A^∇∇·B^∇∇` of both sides.
    pub common: Matrix,
}

fn transpose_gen(g: &ElemGen) -> ElemGen {
    match *g {
        ElemGen::Gaussian { i, j, a } => ElemGen::Gaussian { i: j, j: i, a },
        other => other,
    }
}

/// Gaussians for the strictly-lower entries, rows ascending. In this order
/// no pair chains (a left generator's column never matches a later row), so
/// the product is exactly `I + (lower entries)`.
fn lower_triangle_word(l: &Matrix) -> Vec<ElemGen> {
    let mut gens = Vec::new();
    for i in 0..l.n() {
        for j in 0..i {
            if !l.get(i, j).is_zero() {
                gens.push(ElemGen::Gaussian { i, j, a: l.get(i, j) });
            }
        }
    }
    gens
}

/// Gaussians for the strictly-upper entries, rows descending; the mirror of
/// [`lower_triangle_word`], likewise chain-free.
fn upper_triangle_word(u: &Matrix) -> Vec<ElemGen> {
    let mut gens = Vec::new();
    for i in (0..u.n()).rev() {
        for j in (i + 1)..u.n() {
            if !u.get(i, j).is_zero() {
                gens.push(ElemGen::Gaussian { i, j, a: u.get(i, j) });
            }
        }
    }
    gens
}

/// A generalized permutation as diagonal multipliers followed by
/// transpositions.
fn genperm_word(q: &GenPerm) -> Vec<ElemGen> {
    let mut gens = Vec::new();
    for (i, &w) in q.weights().iter().enumerate() {
        if w != TropElem::one() {
            gens.push(ElemGen::DiagMult { i, a: w });
        }
    }
    for (i, j) in q.perm().transposition_factors() {
        gens.push(ElemGen::Transposition { i, j });
    }
    gens
}

fn bridge_side(closure: &Matrix, bar: &Matrix, q: &GenPerm) -> Result<BridgeSide> {
    let n = closure.n();
    let bar_closure = nabla2(bar)?;
    if bar_closure.try_mul(&q.to_matrix())? != *closure {
        return Err(Error::internal(
            "∇∇-closure did not split across the generalized permutation",
        ));
    }
    if let Some((l, u)) = lu_attempt(&bar_closure) {
        let mut gens = lower_triangle_word(&l);
        gens.extend(upper_triangle_word(&u));
        gens.extend(genperm_word(q));
        let word = ElemWord(gens);
        if word_product(&word, n)? != *closure {
            return Err(Error::internal(
                "triangular decomposition failed to reproduce the closure",
            ));
        }
        return Ok(BridgeSide {
            matrix: closure.clone(),
            word: Some(word),
            fully_elementary: true,
        });
    }
    Ok(BridgeSide { matrix: closure.clone(), word: None, fully_elementary: false })
}

/// Connect two nonsingular matrices of the same size by elementary data:
/// `word_product(e1)·A·e2 = e3·B·word_product(e4) = A^∇∇·B^∇∇`, exactly.
pub fn bridge(a: &Matrix, b: &Matrix) -> Result<Bridge> {
    if a.n() != b.n() {
        return Err(Error::shape(format!(
            "bridge: dimension mismatch ({} vs {})",
            a.n(),
            b.n()
        )));
    }
    let n = a.n();
    let (qa, abar) = factor_out(a, Side::Right)?;
    let (qb, bbar) = factor_out(b, Side::Right)?;

    let (e1, _) = definite_correction_word(&abar)?;

    // A right-acting word for B̄: transpose the correction word of B̄ᵗ and
    // reverse it, so B̄·word = B̄^∇∇; then conjugate through Q⁻¹ to act on B.
    let (wt, _) = definite_correction_word(&bbar.transpose())?;
    let e_r = ElemWord(wt.0.iter().rev().map(transpose_gen).collect());
    let e4 = conjugate_gaussian_word(&e_r, &qb.inverse())?;

    let a_closure = nabla2(a)?;
    let b_closure = nabla2(b)?;
    let common = a_closure.try_mul(&b_closure)?;

    let lhs = word_product(&e1, n)?.try_mul(a)?.try_mul(&b_closure)?;
    let rhs = a_closure.try_mul(b)?.try_mul(&word_product(&e4, n)?)?;
    if lhs != common || rhs != common {
        return Err(Error::internal(
            "bridge equation failed to close; this is a bug",
        ));
    }

    let e2 = bridge_side(&b_closure, &bbar, &qb)?;
    let e3 = bridge_side(&a_closure, &abar, &qa)?;
    Ok(Bridge { e1, e2, e3, e4, common })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::classify_singularity;
    use crate::matrix::Perm;
    use crate::semiring::{TropElem as E, Zero};

    fn t(v: i128) -> TropElem {
        E::t(v)
    }
    fn g(v: i128) -> TropElem {
        E::g(v)
    }
    fn gau(i: usize, j: usize, a: TropElem) -> ElemGen {
        ElemGen::Gaussian { i, j, a }
    }
    fn mat(rows: &[&[TropElem]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn word_product_examples() {
        // The two-generator monoid formula.
        let w = ElemWord(vec![gau(0, 1, t(3)), gau(1, 0, t(-7))]);
        assert_eq!(
            word_product(&w, 2).unwrap(),
            mat(&[&[t(0), t(3)], &[t(-7), t(0)]])
        );
        // With ab ≥ν 𝟙 the corner entry surfaces.
        let w = ElemWord(vec![gau(0, 1, t(1)), gau(1, 0, t(1))]);
        assert_eq!(
            word_product(&w, 2).unwrap(),
            mat(&[&[t(2), t(1)], &[t(1), t(0)]])
        );
        assert_eq!(per(&word_product(&w, 2).unwrap()).unwrap(), g(2));
        // Empty word.
        assert!(word_product(&ElemWord::default(), 3).unwrap().is_identity());
        // Out-of-range index.
        let w = ElemWord(vec![gau(0, 5, t(0))]);
        assert!(matches!(word_product(&w, 3), Err(Error::Shape(_))));
    }

    #[test]
    fn gen_text_round_trip() {
        let word = ElemWord(vec![
            ElemGen::Transposition { i: 0, j: 2 },
            ElemGen::DiagMult { i: 1, a: t(-3) },
            gau(2, 0, g(5)),
        ]);
        let text = word.to_string();
        assert_eq!(text, "T 1 3\nD 2 -3\nG 3 1 5v");
        assert_eq!(ElemWord::parse_text(&text).unwrap(), word);
        // Parse errors carry line positions.
        match ElemWord::parse_text("T 1 3\nG 1 1 0") {
            Err(Error::Domain(_)) => {}
            other => panic!("expected domain error for i = j, got {other:?}"),
        }
        match ElemWord::parse_text("T 1 3\nX 1 2") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected parse error on line 2, got {other:?}"),
        }
        // Diagonal multipliers must be tangible.
        assert!(ElemWord::parse_text("D 1 5v").is_err());
    }

    /// The rewriting relations hold as matrix identities at sampled weights.
    #[test]
    fn rewrite_relations_hold_numerically() {
        let n = 4;
        let vals = [t(-2), t(-1), t(1), t(3), g(-1), g(2)];
        let prod = |gens: &[ElemGen]| word_product(&ElemWord(gens.to_vec()), n).unwrap();
        for &a in &vals {
            for &b in &vals {
                // Disjoint commutation.
                assert_eq!(
                    prod(&[gau(0, 1, a), gau(2, 3, b)]),
                    prod(&[gau(2, 3, b), gau(0, 1, a)])
                );
                // Reverse pair: commutes exactly when ab <ν 𝟙.
                let lhs = prod(&[gau(0, 1, a), gau(1, 0, b)]);
                let rhs = prod(&[gau(1, 0, b), gau(0, 1, a)]);
                assert_eq!(lhs == rhs, (a * b).nu_lt(&E::one()), "a={a} b={b}");
                // Chain with k < i < j (indices 1-based (i,j,k) = (2,3,1)).
                assert_eq!(
                    prod(&[gau(1, 2, a), gau(2, 0, b)]),
                    prod(&[gau(1, 0, a * b), gau(2, 0, b), gau(1, 2, a)])
                );
                // Chain with i < k < j (indices (i,j,k) = (1,3,2)).
                assert_eq!(
                    prod(&[gau(0, 2, a), gau(2, 1, b)]),
                    prod(&[gau(2, 1, b), gau(0, 2, a), gau(0, 1, a * b)])
                );
            }
        }
    }

    #[test]
    fn steinberg_swap_and_sorted_cases() {
        // Reverse pair below 𝟙 swaps.
        let w = ElemWord(vec![gau(0, 1, t(-1)), gau(1, 0, t(-2))]);
        let (lower, upper) = steinberg_normal_form(&w, 2).unwrap().unwrap();
        assert_eq!(lower, ElemWord(vec![gau(1, 0, t(-2))]));
        assert_eq!(upper, ElemWord(vec![gau(0, 1, t(-1))]));
        // Already sorted: unchanged.
        let w = ElemWord(vec![gau(2, 0, t(5)), gau(0, 1, t(3))]);
        let (lower, upper) = steinberg_normal_form(&w, 3).unwrap().unwrap();
        assert_eq!(lower, ElemWord(vec![gau(2, 0, t(5))]));
        assert_eq!(upper, ElemWord(vec![gau(0, 1, t(3))]));
        // Reverse pair at 𝟙 or above: honestly unrewritable.
        let w = ElemWord(vec![gau(0, 1, t(1)), gau(1, 0, t(1))]);
        assert_eq!(steinberg_normal_form(&w, 2).unwrap(), None);
    }

    #[test]
    fn steinberg_chain_case() {
        // E_{1,3}(a)·E_{3,2}(b) rewrites through the i < k < j relation.
        let w = ElemWord(vec![gau(0, 2, t(-1)), gau(2, 1, t(-2))]);
        let target = word_product(&w, 3).unwrap();
        let (lower, upper) = steinberg_normal_form(&w, 3).unwrap().unwrap();
        assert_eq!(lower, ElemWord(vec![gau(2, 1, t(-2))]));
        assert_eq!(upper, ElemWord(vec![gau(0, 2, t(-1)), gau(0, 1, t(-3))]));
        let mut together = lower.0.clone();
        together.extend(upper.0.clone());
        assert_eq!(word_product(&ElemWord(together), 3).unwrap(), target);
    }

    #[test]
    fn steinberg_blocked_reverse_chain() {
        // E_{1,2}(a)·E_{3,1}(b): the lower feeds the upper's row; its
        // product is not expressible in lower·upper form at all.
        let w = ElemWord(vec![gau(0, 1, t(2)), gau(2, 0, t(4))]);
        assert_eq!(steinberg_normal_form(&w, 3).unwrap(), None);
    }

    #[test]
    fn steinberg_merges_repeated_positions() {
        let w = ElemWord(vec![gau(0, 1, t(1)), gau(0, 1, t(4)), gau(1, 0, t(-9))]);
        let target = word_product(&w, 2).unwrap();
        let (lower, upper) = steinberg_normal_form(&w, 2).unwrap().unwrap();
        assert_eq!(lower, ElemWord(vec![gau(1, 0, t(-9))]));
        assert_eq!(upper, ElemWord(vec![gau(0, 1, t(4))]));
        let mut together = lower.0;
        together.extend(upper.0);
        assert_eq!(word_product(&ElemWord(together), 2).unwrap(), target);
        // Non-Gaussian generators are refused.
        let w = ElemWord(vec![ElemGen::Transposition { i: 0, j: 1 }]);
        assert!(matches!(steinberg_normal_form(&w, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn sns_witness_2x2_example() {
        let a = Matrix::gaussian(2, 0, 1, t(-1)).unwrap();
        let (gen, p, a1) = sns_witness_with_part(&a).unwrap();
        assert!(p.to_matrix().is_identity());
        assert_eq!(a1, a);
        assert_eq!(gen, gau(1, 0, t(1)));
        let product = gen.to_matrix(2).unwrap().try_mul(&a1).unwrap();
        assert_eq!(product, mat(&[&[t(0), t(-1)], &[t(1), g(0)]]));
        assert_eq!(per(&product).unwrap(), g(0));
        assert!(classify_singularity(&product).unwrap().is_singular());
    }

    #[test]
    fn sns_witness_preconditions() {
        // Invertible input: refused as witness-free.
        let p = Matrix::permutation(&Perm::from_images(vec![1, 0]).unwrap());
        assert!(matches!(sns_witness(&p), Err(Error::Witness(_))));
        // Permanent off 𝟙: domain error.
        let scaled = mat(&[&[t(1), t(0)], &[Zero, t(0)]]);
        assert!(matches!(sns_witness(&scaled), Err(Error::Domain(_))));
        // Strictly normal with a single off-diagonal entry: that entry's
        // mirror is the only candidate.
        let a = Matrix::gaussian(3, 2, 0, t(-4)).unwrap();
        assert_eq!(sns_witness(&a).unwrap(), gau(0, 2, t(4)));
    }

    #[test]
    fn ed_factor_fixed_points_and_chain() {
        // Quasi-identities are ∇∇-fixed: empty word.
        let q = mat(&[&[t(0), g(5)], &[Zero, t(0)]]);
        assert!(ed_factor(&q).unwrap().is_empty());
        // A definite chain grows one ghost corner entry.
        let a = mat(&[
            &[t(0), t(-1), Zero],
            &[Zero, t(0), t(-2)],
            &[Zero, Zero, t(0)],
        ]);
        let word = ed_factor(&a).unwrap();
        assert_eq!(word, ElemWord(vec![gau(0, 2, g(-3))]));
        let closure = nabla2(&a).unwrap();
        assert_eq!(
            closure,
            mat(&[
                &[t(0), t(-1), g(-3)],
                &[Zero, t(0), t(-2)],
                &[Zero, Zero, t(0)],
            ])
        );
        assert_eq!(
            word_product(&word, 3).unwrap().try_mul(&a).unwrap(),
            closure
        );
        assert!(closure.surpasses(&a).unwrap());
    }

    #[test]
    fn ed_factor_conjugates_through_the_permutation() {
        // The same chain shuffled by a weighted permutation.
        let chain = mat(&[
            &[t(0), t(-1), Zero],
            &[Zero, t(0), t(-2)],
            &[Zero, Zero, t(0)],
        ]);
        let p = GenPerm::new(
            Perm::from_images(vec![2, 0, 1]).unwrap(),
            vec![t(3), t(-1), t(-2)],
        )
        .unwrap();
        let a = p.to_matrix().try_mul(&chain).unwrap();
        let word = ed_factor(&a).unwrap();
        assert_eq!(word.len(), 1);
        assert_eq!(
            word_product(&word, 3).unwrap().try_mul(&a).unwrap(),
            nabla2(&a).unwrap()
        );
        // Singular input is refused.
        let ghosty = mat(&[&[t(0), t(0)], &[t(0), t(0)]]);
        assert!(matches!(ed_factor(&ghosty), Err(Error::Singular(_))));
    }

    #[test]
    fn lu_attempt_examples() {
        let id = Matrix::identity(3);
        assert_eq!(lu_attempt(&id), Some((id.clone(), id.clone())));
        // A product of one lower and one upper Gaussian splits back.
        let m = word_product(
            &ElemWord(vec![gau(1, 0, t(-2)), gau(0, 1, t(-3))]),
            2,
        )
        .unwrap();
        let (l, u) = lu_attempt(&m).unwrap();
        assert_eq!(l, Matrix::gaussian(2, 1, 0, t(-2)).unwrap());
        assert_eq!(u, Matrix::gaussian(2, 0, 1, t(-3)).unwrap());
        // The two-track band has no triangular split.
        let band = mat(&[
            &[t(0), t(1), Zero, Zero],
            &[Zero, t(0), t(-1), Zero],
            &[Zero, Zero, t(0), t(2)],
            &[t(-2), Zero, Zero, t(0)],
        ]);
        assert_eq!(lu_attempt(&band), None);
    }

    #[test]
    fn triangular_words_are_chain_free() {
        let l = mat(&[
            &[t(0), Zero, Zero],
            &[t(2), t(0), Zero],
            &[t(5), t(-1), t(0)],
        ]);
        let u = l.transpose();
        assert_eq!(
            word_product(&ElemWord(lower_triangle_word(&l)), 3).unwrap(),
            l
        );
        assert_eq!(
            word_product(&ElemWord(upper_triangle_word(&u)), 3).unwrap(),
            u
        );
    }

    #[test]
    fn genperm_word_reproduces_the_matrix() {
        let q = GenPerm::new(
            Perm::from_images(vec![2, 0, 3, 1]).unwrap(),
            vec![t(1), t(-4), t(0), t(3)],
        )
        .unwrap();
        assert_eq!(
            word_product(&ElemWord(genperm_word(&q)), 4).unwrap(),
            q.to_matrix()
        );
    }

    #[test]
    fn bridge_examples() {
        let chain = mat(&[
            &[t(0), t(-1), Zero],
            &[Zero, t(0), t(-2)],
            &[Zero, Zero, t(0)],
        ]);
        // Symmetric instance.
        let br = bridge(&chain, &chain).unwrap();
        assert_eq!(br.common, {
            let c = nabla2(&chain).unwrap();
            c.try_mul(&c).unwrap()
        });
        // Identity on the left: e1 is empty.
        let br = bridge(&Matrix::identity(3), &chain).unwrap();
        assert!(br.e1.is_empty());
        assert_eq!(br.e2.matrix, nabla2(&chain).unwrap());
        assert!(br.e2.fully_elementary);
        let word = br.e2.word.as_ref().unwrap();
        assert_eq!(word_product(word, 3).unwrap(), br.e2.matrix);
        // A permuted, weighted pair.
        let p = GenPerm::new(
            Perm::from_images(vec![1, 2, 0]).unwrap(),
            vec![t(2), t(-1), t(-1)],
        )
        .unwrap();
        let a = chain.try_mul(&p.to_matrix()).unwrap();
        let b = p.to_matrix().try_mul(&chain).unwrap();
        let br = bridge(&a, &b).unwrap();
        let lhs = word_product(&br.e1, 3)
            .unwrap()
            .try_mul(&a)
            .unwrap()
            .try_mul(&br.e2.matrix)
            .unwrap();
        let rhs = br
            .e3
            .matrix
            .try_mul(&b)
            .unwrap()
            .try_mul(&word_product(&br.e4, 3).unwrap())
            .unwrap();
        assert_eq!(lhs, br.common);
        assert_eq!(rhs, br.common);
        for side in [&br.e2, &br.e3] {
            if let Some(w) = &side.word {
                assert!(side.fully_elementary);
                assert_eq!(word_product(w, 3).unwrap(), side.matrix);
            } else {
                assert!(!side.fully_elementary);
            }
        }
        // Mismatched sizes and singular inputs are refused.
        assert!(matches!(
            bridge(&Matrix::identity(2), &chain),
            Err(Error::Shape(_))
        ));
        let ghosty = mat(&[&[t(0), t(0)], &[t(0), t(0)]]);
        assert!(matches!(
            bridge(&ghosty, &Matrix::identity(2)),
            Err(Error::Singular(_))
        ));
    }
}
