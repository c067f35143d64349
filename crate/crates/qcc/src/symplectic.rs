//! Symplectic linear algebra over F_p^2n: inner products, joint weight,
//! isotropy, centralisers, separately-cyclic detection, generating-triple
//! extraction and the literal CSS-form test.
//!
//! The module is generic over small primes p ∈ {2, 3, 5} so the
//! characterisation logic can be property-tested away from characteristic
//! 2; everything downstream constructs with p = 2. Subspaces are kept in
//! reduced row echelon form, which makes span equality plain row equality
//! and keeps all outputs deterministic.

use thiserror::Error;

use crate::poly::BinaryPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("component lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("unsupported prime {0}; p must be one of 2, 3, 5")]
    UnsupportedPrime(u8),
    #[error("subspace is not separately cyclic")]
    NotSeparatelyCyclic,
    #[error("triple extraction requires p = 2")]
    ExtractionNeedsP2,
}

/// An element of F_pⁿ × F_pⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SympPair {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
}

impl SympPair {
    pub fn new(a: Vec<u8>, b: Vec<u8>) -> Result<Self, SymplecticError> {
        if a.len() != b.len() {
            return Err(SymplecticError::LengthMismatch(a.len(), b.len()));
        }
        Ok(Self { a, b })
    }

    pub fn zero(n: usize) -> Self {
        Self { a: vec![0; n], b: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Simultaneous right cyclic shift of both halves.
    pub fn shift(&self) -> Self {
        Self { a: shift_right(&self.a), b: shift_right(&self.b) }
    }

    pub fn from_polys(n: usize, a: &BinaryPoly, b: &BinaryPoly) -> Self {
        Self {
            a: (0..n).map(|i| a.coeff(i) as u8).collect(),
            b: (0..n).map(|i| b.coeff(i) as u8).collect(),
        }
    }

    /// Interpret both halves as F₂ polynomials (entries taken mod 2).
    pub fn to_polys(&self) -> (BinaryPoly, BinaryPoly) {
        let mut a = BinaryPoly::zero();
        let mut b = BinaryPoly::zero();
        for (i, &v) in self.a.iter().enumerate() {
            a.set_coeff(i, v % 2 == 1);
        }
        for (i, &v) in self.b.iter().enumerate() {
            b.set_coeff(i, v % 2 == 1);
        }
        (a, b)
    }
}

fn shift_right(v: &[u8]) -> Vec<u8> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(v.len());
    out.push(v[v.len() - 1]);
    out.extend_from_slice(&v[..v.len() - 1]);
    out
}

/// aᵀd − bᵀc mod p.
pub fn symp_product(u: &SympPair, v: &SympPair, p: u8) -> Result<u8, SymplecticError> {
    if u.len() != v.len() {
        return Err(SymplecticError::LengthMismatch(u.len(), v.len()));
    }
    let p = p as i32;
    let mut acc = 0i32;
    for i in 0..u.len() {
        acc += u.a[i] as i32 * v.b[i] as i32 - u.b[i] as i32 * v.a[i] as i32;
    }
    Ok(acc.rem_euclid(p) as u8)
}

/// Number of positions where at least one half is nonzero.
pub fn joint_weight(u: &SympPair) -> usize {
    (0..u.len()).filter(|&i| u.a[i] != 0 || u.b[i] != 0).count()
}

/// Equality test of the two ring products `a(X)d(X⁻¹)` and `b(X)c(X⁻¹)`
/// modulo Xⁿ−1 (the polynomial form of the symplectic condition, p = 2).
pub fn poly_isotropic_pair(
    a: &BinaryPoly,
    b: &BinaryPoly,
    c: &BinaryPoly,
    d: &BinaryPoly,
    n: usize,
) -> bool {
    a.ring_mul(&d.ring_reverse(n), n) == b.ring_mul(&c.ring_reverse(n), n)
}

/// A subspace of F_p^2n with the basis kept in reduced row echelon form
/// over the 2n coordinates (a|b).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SympSubspace {
    n: usize,
    p: u8,
    rows: Vec<Vec<u8>>,
}

impl SympSubspace {
    pub fn zero(n: usize, p: u8) -> Result<Self, SymplecticError> {
        check_prime(p)?;
        Ok(Self { n, p, rows: Vec::new() })
    }

    pub fn from_pairs(
        n: usize,
        p: u8,
        pairs: &[SympPair],
    ) -> Result<Self, SymplecticError> {
        check_prime(p)?;
        let mut rows = Vec::with_capacity(pairs.len());
        for pair in pairs {
            if pair.len() != n {
                return Err(SymplecticError::LengthMismatch(pair.len(), n));
            }
            let mut row = Vec::with_capacity(2 * n);
            row.extend(pair.a.iter().map(|&v| v % p));
            row.extend(pair.b.iter().map(|&v| v % p));
            rows.push(row);
        }
        let rows = rref(rows, p);
        Ok(Self { n, p, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<SympPair> {
        self.rows
            .iter()
            .map(|r| SympPair {
                a: r[..self.n].to_vec(),
                b: r[self.n..].to_vec(),
            })
            .collect()
    }

    pub fn contains(&self, pair: &SympPair) -> bool {
        if pair.len() != self.n {
            return false;
        }
        let mut row: Vec<u8> = pair
            .a
            .iter()
            .chain(pair.b.iter())
            .map(|&v| v % self.p)
            .collect();
        reduce_against(&mut row, &self.rows, self.p);
        row.iter().all(|&v| v == 0)
    }

    /// All p^dim elements (small subspaces only).
    pub fn elements(&self) -> Vec<SympPair> {
        let mut out = vec![vec![0u8; 2 * self.n]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                for c in 0..self.p {
                    let mut w = v.clone();
                    for (slot, &r) in w.iter_mut().zip(row.iter()) {
                        *slot = (*slot + c * r) % self.p;
                    }
                    next.push(w);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|r| SympPair { a: r[..self.n].to_vec(), b: r[self.n..].to_vec() })
            .collect()
    }

    pub fn is_totally_isotropic(&self) -> bool {
        let basis = self.basis();
        basis.iter().enumerate().all(|(i, u)| {
            basis[i..]
                .iter()
                .all(|v| symp_product(u, v, self.p).unwrap() == 0)
        })
    }

    pub fn is_separately_cyclic(&self) -> bool {
        self.basis().iter().all(|u| self.contains(&u.shift()))
    }

    /// All vectors symplectically orthogonal to every element, i.e. the
    /// kernel of v ↦ (⟨v, basisᵢ⟩)ᵢ computed by elimination.
    pub fn centraliser_bruteforce(&self) -> SympSubspace {
        // ⟨(x, y), (c, d)⟩ = xᵀd − yᵀc, so each basis element (c, d)
        // contributes the constraint row (d | −c).
        let constraints: Vec<Vec<u8>> = self
            .basis()
            .iter()
            .map(|pair| {
                let mut row = Vec::with_capacity(2 * self.n);
                row.extend(pair.b.iter().copied());
                row.extend(pair.a.iter().map(|&v| (self.p - v) % self.p));
                row
            })
            .collect();
        let kernel = kernel_basis(constraints, 2 * self.n, self.p);
        SympSubspace { n: self.n, p: self.p, rows: rref(kernel, self.p) }
    }

    /// Does S split as (S ∩ (F_pⁿ × 0)) ⊕ (S ∩ (0 × F_pⁿ))?
    pub fn is_css_form(&self) -> bool {
        let left = self.intersect_half(true);
        let right = self.intersect_half(false);
        left.len() + right.len() == self.dim()
    }

    /// Basis of S ∩ (F_pⁿ × 0) (first = true) or S ∩ (0 × F_pⁿ).
    fn intersect_half(&self, first: bool) -> Vec<Vec<u8>> {
        // combos x with x·rows having zero complement half
        let complement: Vec<Vec<u8>> = self
            .rows
            .iter()
            .map(|r| {
                if first {
                    r[self.n..].to_vec()
                } else {
                    r[..self.n].to_vec()
                }
            })
            .collect();
        let combos = kernel_basis(transpose(&complement, self.n), self.rows.len(), self.p);
        combos
            .iter()
            .map(|combo| {
                let mut v = vec![0u8; 2 * self.n];
                for (coef, row) in combo.iter().zip(self.rows.iter()) {
                    for (slot, &r) in v.iter_mut().zip(row.iter()) {
                        *slot = (*slot + coef * r) % self.p;
                    }
                }
                v
            })
            .collect()
    }

    /// Grow an isotropic, separately cyclic subspace to a maximal one
    /// (dimension n) by adjoining centraliser vectors that preserve both
    /// properties. Used to present a stabiliser group inside a maximal
    /// abelian one whose characters carry rank-1 projectors.
    pub fn maximal_cyclic_extension(&self) -> Result<SympSubspace, SymplecticError> {
        if !self.is_totally_isotropic() || !self.is_separately_cyclic() {
            return Err(SymplecticError::NotSeparatelyCyclic);
        }
        let mut current = self.clone();
        while current.dim() < current.n {
            let centraliser = current.centraliser_bruteforce();
            let extended = centraliser
                .basis()
                .into_iter()
                .filter(|v| !current.contains(v))
                .find_map(|v| {
                    let mut pairs = current.basis();
                    pairs.push(v);
                    let cand = SympSubspace::from_pairs(current.n, current.p, &pairs).ok()?;
                    (cand.is_totally_isotropic() && cand.is_separately_cyclic())
                        .then_some(cand)
                });
            match extended {
                Some(next) => current = next,
                None => return Err(SymplecticError::NotSeparatelyCyclic),
            }
        }
        Ok(current)
    }

    /// Recover a generating triple (g, f, h) of a separately cyclic
    /// subspace over F₂. The conventions for degenerate projections use
    /// Xⁿ−1 as the generator of the zero ideal.
    pub fn extract_generating_triple(
        &self,
    ) -> Result<crate::cyclic_code::GeneratingTriple, SymplecticError> {
        if self.p != 2 {
            return Err(SymplecticError::ExtractionNeedsP2);
        }
        if !self.is_separately_cyclic() {
            return Err(SymplecticError::NotSeparatelyCyclic);
        }
        let n = self.n;
        let xn1 = BinaryPoly::xn_minus_one(n);

        // g generates the ideal of first projections
        let mut g = xn1.clone();
        for pair in self.basis() {
            let (pa, _) = pair.to_polys();
            if !pa.is_zero() {
                g = g.gcd(&pa).unwrap();
            }
        }

        // h generates B0 = { b : (0, b) ∈ S }
        let mut h = xn1.clone();
        for row in self.intersect_half(false) {
            let pair = SympPair { a: row[..n].to_vec(), b: row[n..].to_vec() };
            let (_, pb) = pair.to_polys();
            if !pb.is_zero() {
                h = h.gcd(&pb).unwrap();
            }
        }

        // f: a companion with (g, f) ∈ S, canonicalised to the
        // minimum-weight then value-least representative modulo (h)
        let f = if g == xn1 {
            BinaryPoly::zero()
        } else {
            let g_vec: Vec<u8> = (0..n).map(|i| g.coeff(i) as u8).collect();
            let combo = solve_first_half(&self.rows, &g_vec, n)
                .expect("g lies in the projection ideal");
            let mut f_any = BinaryPoly::zero();
            for (i, &c) in combo.iter().enumerate() {
                if c == 1 {
                    let (_, pb) = SympPair {
                        a: self.rows[i][..n].to_vec(),
                        b: self.rows[i][n..].to_vec(),
                    }
                    .to_polys();
                    f_any = f_any.add(&pb);
                }
            }
            canonical_mod_ideal(&f_any, &h, n)
        };

        Ok(crate::cyclic_code::GeneratingTriple { n, g, f, h })
    }
}

impl std::fmt::Display for SympSubspace {
    /// One `(a|b)` bit row per basis element.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.rows {
            let (a, b) = row.split_at(self.n);
            let render = |half: &[u8]| -> String {
                half.iter().map(|v| char::from(b'0' + v)).collect()
            };
            writeln!(f, "({}|{})", render(a), render(b))?;
        }
        Ok(())
    }
}

/// Minimum-(weight, value) representative of `f + ideal(h)` in the ring.
fn canonical_mod_ideal(f: &BinaryPoly, h: &BinaryPoly, n: usize) -> BinaryPoly {
    if h.degree().is_none_or(|d| d >= n) {
        return f.clone(); // zero ideal: the coset is {f}
    }
    let dim = n - h.degree().unwrap_or(n).min(n);
    if dim > 20 {
        // ideal too large to scan; the plain remainder is still a
        // deterministic coset representative
        return f.rem(h).unwrap();
    }
    let mut best = f.clone();
    for bits in 0u64..(1 << dim) {
        let b = BinaryPoly::from_word(bits);
        let cand = f.add(&b.ring_mul(h, n));
        let better = match cand.weight().cmp(&best.weight()) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => {
                cand.cmp_value(&best) == std::cmp::Ordering::Less
            }
            std::cmp::Ordering::Greater => false,
        };
        if better {
            best = cand;
        }
    }
    best
}

/// Solve Σ xᵢ·rows[i][..n] = target over F₂.
fn solve_first_half(rows: &[Vec<u8>], target: &[u8], n: usize) -> Option<Vec<u8>> {
    // Gaussian elimination on the transposed system with an augmented column.
    let m = rows.len();
    let mut mat: Vec<Vec<u8>> = (0..n)
        .map(|coord| {
            let mut r: Vec<u8> = (0..m).map(|i| rows[i][coord]).collect();
            r.push(target[coord]);
            r
        })
        .collect();
    mat = rref(mat, 2);
    let mut solution = vec![0u8; m];
    for row in &mat {
        let pivot = row[..m].iter().position(|&v| v != 0);
        match pivot {
            Some(j) => solution[j] = row[m],
            None if row[m] != 0 => return None,
            None => {}
        }
    }
    // verify (free variables set to zero)
    for coord in 0..n {
        let mut acc = 0u8;
        for i in 0..m {
            acc ^= solution[i] & rows[i][coord];
        }
        if acc != target[coord] {
            return None;
        }
    }
    Some(solution)
}

fn check_prime(p: u8) -> Result<(), SymplecticError> {
    if matches!(p, 2 | 3 | 5) {
        Ok(())
    } else {
        Err(SymplecticError::UnsupportedPrime(p))
    }
}

fn inv_mod_p(v: u8, p: u8) -> u8 {
    (1..p).find(|&x| x * v % p == 1).expect("unit mod prime")
}

/// Reduced row echelon form over F_p.
pub(crate) fn rref(mut rows: Vec<Vec<u8>>, p: u8) -> Vec<Vec<u8>> {
    rows.retain(|r| r.iter().any(|&v| v != 0));
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = inv_mod_p(rows[pivot_row][col], p);
        for v in rows[pivot_row].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let factor = row[col];
                for (slot, &pv) in row.iter_mut().zip(pivot.iter()) {
                    *slot = (*slot + (p - factor) * pv) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|&v| v != 0));
    rows
}

fn reduce_against(row: &mut [u8], rref_rows: &[Vec<u8>], p: u8) {
    for r in rref_rows {
        let col = r.iter().position(|&v| v != 0).unwrap();
        if row[col] != 0 {
            let factor = row[col];
            for c in 0..row.len() {
                row[c] = (row[c] + (p - factor) * r[c]) % p;
            }
        }
    }
}

/// Basis of { x : M x = 0 } for the rows of `constraints` acting on
/// `cols` unknowns.
pub(crate) fn kernel_basis(constraints: Vec<Vec<u8>>, cols: usize, p: u8) -> Vec<Vec<u8>> {
    let mat = rref(constraints, p);
    let mut pivot_cols = Vec::new();
    for row in &mat {
        pivot_cols.push(row.iter().position(|&v| v != 0).unwrap());
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![0u8; cols];
        v[free] = 1;
        for (row, &pc) in mat.iter().zip(pivot_cols.iter()) {
            // pivot entry is 1 after rref
            v[pc] = (p - row[free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

fn transpose(rows: &[Vec<u8>], cols: usize) -> Vec<Vec<u8>> {
    (0..cols)
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect()
}
