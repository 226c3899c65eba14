//! Homogeneous trivariate forms and univariate polynomials over a prime
//! field, plus the resultant and root machinery behind fiber measurements.
//!
//! Forms are dense over the monomial basis of fixed degree `d`, ordered by
//! `x`-exponent then `y`-exponent (the `z`-exponent is implied). Univariate
//! polynomials are dense with ascending coefficients and no trailing zeros.


use rand_chacha::ChaCha8Rng;

use super::gf::Fp;
use crate::error::{Error, Result};

/// Number of degree-`d` monomials in three variables.
pub(crate) fn monomial_count(d: u32) -> usize {
    ((d as usize + 1) * (d as usize + 2)) / 2
}

/// Position of `x^i y^j z^(d-i-j)` in the coefficient vector.
pub(crate) fn monomial_index(d: u32, i: u32, j: u32) -> usize {
    debug_assert!(i + j <= d);
    let (d, i, j) = (d as usize, i as usize, j as usize);
    i * (2 * d + 3 - i) / 2 + j
}

/// All `(i, j, k)` exponent triples of degree `d`, in coefficient order.
pub(crate) fn monomials(d: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=d).flat_map(move |i| (0..=d - i).map(move |j| (i, j, d - i - j)))
}

/// A homogeneous form of fixed degree in `x, y, z` over GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    q: u64,
    degree: u32,
    coeffs: Vec<u64>,
}

impl Form {
    pub(crate) fn zero(q: u64, degree: u32) -> Self {
        Self {
            q,
            degree,
            coeffs: vec![0; monomial_count(degree)],
        }
    }

    pub(crate) fn constant(q: u64, c: u64) -> Self {
        Self {
            q,
            degree: 0,
            coeffs: vec![c % q],
        }
    }

    pub(crate) fn from_dense(q: u64, degree: u32, coeffs: Vec<u64>) -> Self {
        assert_eq!(coeffs.len(), monomial_count(degree));
        let coeffs = coeffs.into_iter().map(|c| c % q).collect();
        Self { q, degree, coeffs }
    }

    /// Builds a form from `(i, j, k, coefficient)` monomials, all of which
    /// must have total degree `degree`. Repeated monomials accumulate.
    pub fn from_monomials(
        q: u64,
        degree: u32,
        entries: &[(u32, u32, u32, i64)],
    ) -> Result<Self> {
        let fp = Fp { q };
        let mut form = Form::zero(q, degree);
        for &(i, j, k, c) in entries {
            if i + j + k != degree {
                return Err(Error::ParseForm(format!(
                    "monomial x^{i} y^{j} z^{k} has degree {}, expected {degree}",
                    i + j + k
                )));
            }
            let c = c.rem_euclid(q as i64) as u64;
            let idx = monomial_index(degree, i, j);
            form.coeffs[idx] = fp.add(form.coeffs[idx], c);
        }
        Ok(form)
    }

    /// Parses the sparse text format: one monomial per line as four
    /// whitespace-separated fields `i j k c` (exponents of `x, y, z` and an
    /// integer coefficient, negatives allowed). Blank lines and `#`
    /// comments are skipped.
    pub fn parse(q: u64, degree: u32, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::ParseForm(format!(
                    "line {}: expected `i j k c`, got {} field(s)",
                    lineno + 1,
                    fields.len()
                )));
            }
            let exp = |s: &str| -> Result<u32> {
                s.parse::<u32>().map_err(|_| {
                    Error::ParseForm(format!("line {}: bad exponent {s:?}", lineno + 1))
                })
            };
            let c: i64 = fields[3].parse().map_err(|_| {
                Error::ParseForm(format!("line {}: bad coefficient {:?}", lineno + 1, fields[3]))
            })?;
            entries.push((exp(fields[0])?, exp(fields[1])?, exp(fields[2])?, c));
        }
        Form::from_monomials(q, degree, &entries)
    }

    /// Inverse of [`Form::parse`], one nonzero monomial per line.
    pub fn to_sparse_text(&self) -> String {
        let mut out = String::new();
        for (i, j, k) in monomials(self.degree) {
            let c = self.coeffs[monomial_index(self.degree, i, j)];
            if c != 0 {
                out.push_str(&format!("{i} {j} {k} {c}\n"));
            }
        }
        out
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub(crate) fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub(crate) fn coeff(&self, i: u32, j: u32) -> u64 {
        self.coeffs[monomial_index(self.degree, i, j)]
    }

    /// Coefficient of the pure `y^d` monomial; nonzero exactly when
    /// `[0:1:0]` is off the zero locus.
    pub(crate) fn pure_y_coeff(&self) -> u64 {
        self.coeff(0, self.degree)
    }

    pub fn eval(&self, p: [u64; 3]) -> u64 {
        let fp = Fp { q: self.q };
        let d = self.degree as usize;
        let pow_table = |v: u64| -> Vec<u64> {
            let mut t = Vec::with_capacity(d + 1);
            t.push(1 % self.q);
            for e in 1..=d {
                t.push(fp.mul(t[e - 1], v));
            }
            t
        };
        let (px, py, pz) = (
            pow_table(fp.reduce(p[0])),
            pow_table(fp.reduce(p[1])),
            pow_table(fp.reduce(p[2])),
        );
        let mut acc = 0u64;
        for (i, j, k) in monomials(self.degree) {
            let c = self.coeffs[monomial_index(self.degree, i, j)];
            if c != 0 {
                let m = fp.mul(fp.mul(px[i as usize], py[j as usize]), pz[k as usize]);
                acc = fp.add(acc, fp.mul(c, m));
            }
        }
        acc
    }

    pub(crate) fn add_scaled(&mut self, other: &Form, s: u64) {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.q, other.q);
        let fp = Fp { q: self.q };
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = fp.add(*a, fp.mul(b, s));
        }
    }

    pub(crate) fn sub(&self, other: &Form) -> Form {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.q, other.q);
        let fp = Fp { q: self.q };
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| fp.sub(a, b))
            .collect();
        Form {
            q: self.q,
            degree: self.degree,
            coeffs,
        }
    }

    pub(crate) fn neg(&self) -> Form {
        let fp = Fp { q: self.q };
        Form {
            q: self.q,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&c| fp.neg(c)).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.q, other.q);
        let fp = Fp { q: self.q };
        let d = self.degree + other.degree;
        let mut out = Form::zero(self.q, d);
        for (i1, j1, _) in monomials(self.degree) {
            let c1 = self.coeff(i1, j1);
            if c1 == 0 {
                continue;
            }
            for (i2, j2, _) in monomials(other.degree) {
                let c2 = other.coeff(i2, j2);
                if c2 == 0 {
                    continue;
                }
                let idx = monomial_index(d, i1 + i2, j1 + j2);
                out.coeffs[idx] = fp.add(out.coeffs[idx], fp.mul(c1, c2));
            }
        }
        out
    }

    /// Linear combination `sum(scalars[i] * forms[i])`; all forms must share
    /// degree and field.
    pub(crate) fn linear_combination(scalars: &[u64], forms: &[&Form]) -> Form {
        assert_eq!(scalars.len(), forms.len());
        assert!(!forms.is_empty());
        let mut out = Form::zero(forms[0].q, forms[0].degree);
        for (&s, f) in scalars.iter().zip(forms) {
            out.add_scaled(f, s);
        }
        out
    }

    /// `F(M x)` for a 3x3 matrix `M` acting on the column of variables.
    pub(crate) fn substitute(&self, m: &[[u64; 3]; 3]) -> Form {
        let q = self.q;
        let linear = |row: [u64; 3]| {
            Form::from_monomials(
                q,
                1,
                &[
                    (1, 0, 0, (row[0] % q) as i64),
                    (0, 1, 0, (row[1] % q) as i64),
                    (0, 0, 1, (row[2] % q) as i64),
                ],
            )
            .expect("degree-1 monomials")
        };
        let d = self.degree as usize;
        let mut powers: Vec<Vec<Form>> = Vec::with_capacity(3);
        for r in 0..3 {
            let base = linear(m[r]);
            let mut tower = Vec::with_capacity(d + 1);
            tower.push(Form::constant(q, 1));
            for e in 1..=d {
                let next = tower[e - 1].mul(&base);
                tower.push(next);
            }
            powers.push(tower);
        }
        let mut out = Form::zero(q, self.degree);
        for (i, j, k) in monomials(self.degree) {
            let c = self.coeff(i, j);
            if c == 0 {
                continue;
            }
            let term = powers[0][i as usize]
                .mul(&powers[1][j as usize])
                .mul(&powers[2][k as usize]);
            out.add_scaled(&term, c);
        }
        out
    }

    /// The univariate polynomial `F(x0, y, 1)` in `y`.
    pub(crate) fn univariate_in_y(&self, x0: u64) -> Poly1 {
        let fp = Fp { q: self.q };
        let x0 = fp.reduce(x0);
        let d = self.degree as usize;
        let mut xpow = Vec::with_capacity(d + 1);
        xpow.push(1 % self.q);
        for e in 1..=d {
            xpow.push(fp.mul(xpow[e - 1], x0));
        }
        let mut out = vec![0u64; d + 1];
        for (i, j, _) in monomials(self.degree) {
            let c = self.coeff(i, j);
            if c != 0 {
                out[j as usize] = fp.add(out[j as usize], fp.mul(c, xpow[i as usize]));
            }
        }
        Poly1::new(self.q, out)
    }
}

/// Dense univariate polynomial over GF(q), ascending coefficients,
/// normalized to have no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1 {
    q: u64,
    coeffs: Vec<u64>,
}

impl Poly1 {
    pub fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { q, coeffs }
    }

    pub fn zero(q: u64) -> Self {
        Self {
            q,
            coeffs: Vec::new(),
        }
    }

    pub(crate) fn x(q: u64) -> Self {
        Self::new(q, vec![0, 1])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    fn leading(&self) -> u64 {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: u64) -> u64 {
        let fp = Fp { q: self.q };
        let x = fp.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| fp.add(fp.mul(acc, x), c))
    }

    pub(crate) fn sub(&self, other: &Poly1) -> Poly1 {
        let fp = Fp { q: self.q };
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = fp.sub(a, b);
        }
        Poly1::new(self.q, out)
    }

    pub(crate) fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero(self.q);
        }
        let fp = Fp { q: self.q };
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fp.add(out[i + j], fp.mul(a, b));
            }
        }
        Poly1::new(self.q, out)
    }

    fn scale(&self, s: u64) -> Poly1 {
        let fp = Fp { q: self.q };
        Poly1::new(self.q, self.coeffs.iter().map(|&c| fp.mul(c, s)).collect())
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub(crate) fn divrem(&self, divisor: &Poly1) -> (Poly1, Poly1) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let fp = Fp { q: self.q };
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly1::zero(self.q), self.clone());
        }
        let lead_inv = fp.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = fp.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = fp.sub(rem[i - dd + j], fp.mul(c, dc));
            }
        }
        (Poly1::new(self.q, quot), Poly1::new(self.q, rem))
    }

    /// Monic greatest common divisor.
    pub(crate) fn gcd(a: &Poly1, b: &Poly1) -> Poly1 {
        let fp = Fp { q: a.q };
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = fp.inv(a.leading());
            a.scale(inv)
        }
    }

    /// Synthetic division by `(x - c)`: returns `(quotient, remainder)`.
    fn div_by_linear(&self, c: u64) -> (Poly1, u64) {
        let fp = Fp { q: self.q };
        if self.is_zero() {
            return (Poly1::zero(self.q), 0);
        }
        let mut quot = vec![0u64; self.coeffs.len() - 1];
        let mut carry = 0u64;
        for i in (0..self.coeffs.len()).rev() {
            let v = fp.add(self.coeffs[i], fp.mul(carry, c));
            if i == 0 {
                return (Poly1::new(self.q, quot), v);
            }
            quot[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Multiplicity of `c` as a root (0 when not a root).
    pub(crate) fn root_multiplicity(&self, c: u64) -> u32 {
        let mut count = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (quot, rem) = cur.div_by_linear(c);
            if rem != 0 {
                break;
            }
            count += 1;
            cur = quot;
        }
        count
    }

    /// `base^exp mod modulus` in GF(q)[x]; the modulus must have positive
    /// degree.
    fn pow_mod(base: &Poly1, mut exp: u64, modulus: &Poly1) -> Poly1 {
        assert!(modulus.degree().map_or(false, |d| d > 0));
        let mut acc = Poly1::new(base.q, vec![1]);
        let mut base = base.divrem(modulus).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).divrem(modulus).1;
            }
            base = base.mul(&base).divrem(modulus).1;
            exp >>= 1;
        }
        acc
    }

    /// All distinct roots in GF(q), found by splitting off the
    /// linear-factor part with `x^q - x` and then equal-degree splitting.
    /// The splitting is randomized but driven by the caller's generator, so
    /// results are deterministic for a fixed seed.
    pub(crate) fn rational_roots(&self, rng: &mut ChaCha8Rng) -> Result<Vec<u64>> {
        let q = self.q;
        let fp = Fp { q };
        let Some(d) = self.degree() else {
            return Err(Error::BookkeepingCheck(
                "root extraction on the zero polynomial".into(),
            ));
        };
        if d == 0 {
            return Ok(Vec::new());
        }
        let xq = Poly1::pow_mod(&Poly1::x(q), q, self);
        let linear_part = Poly1::gcd(&xq.sub(&Poly1::x(q)), self);
        let mut roots = Vec::new();
        let mut stack = vec![linear_part];
        let mut tries = 0u32;
        while let Some(f) = stack.pop() {
            match f.degree() {
                None | Some(0) => continue,
                Some(1) => {
                    // Monic x + c0: root is -c0.
                    let c0 = fp.mul(f.coeffs[0], fp.inv(f.coeffs[1]));
                    roots.push(fp.neg(c0));
                }
                Some(_) => {
                    tries += 1;
                    if tries > 256 {
                        // Random splitting failing this often is effectively
                        // impossible; scan the field directly when that is
                        // affordable rather than give up.
                        if q <= 100_000 {
                            roots.extend((0..q).filter(|&c| f.eval(c) == 0));
                            continue;
                        }
                        return Err(Error::BookkeepingCheck(
                            "equal-degree splitting stalled".into(),
                        ));
                    }
                    let alpha = fp.rand(rng);
                    let shifted = Poly1::new(q, vec![alpha, 1]);
                    let h = Poly1::pow_mod(&shifted, (q - 1) / 2, &f)
                        .sub(&Poly1::new(q, vec![1]));
                    let g = Poly1::gcd(&h, &f);
                    let gd = g.degree();
                    if gd.is_some() && gd < f.degree() && gd > Some(0) {
                        let (quot, rem) = f.divrem(&g);
                        debug_assert!(rem.is_zero());
                        stack.push(g);
                        stack.push(quot);
                    } else {
                        stack.push(f);
                    }
                }
            }
        }
        roots.sort_unstable();
        Ok(roots)
    }

    /// Newton interpolation through points with pairwise distinct first
    /// coordinates.
    pub(crate) fn interpolate(q: u64, points: &[(u64, u64)]) -> Poly1 {
        let fp = Fp { q };
        let n = points.len();
        let mut coef: Vec<u64> = points.iter().map(|p| fp.reduce(p.1)).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = fp.sub(fp.reduce(points[i].0), fp.reduce(points[i - level].0));
                coef[i] = fp.mul(fp.sub(coef[i], coef[i - 1]), fp.inv(dx));
            }
        }
        let mut poly = Poly1::zero(q);
        for i in (0..n).rev() {
            // poly = poly * (x - x_i) + coef[i]
            let xi = fp.reduce(points[i].0);
            let mut next = vec![0u64; poly.coeffs.len() + 1];
            for (j, &c) in poly.coeffs.iter().enumerate() {
                next[j + 1] = fp.add(next[j + 1], c);
                next[j] = fp.sub(next[j], fp.mul(c, xi));
            }
            next[0] = fp.add(next[0], coef[i]);
            poly = Poly1::new(q, next);
        }
        poly
    }
}

/// Resultant of two univariate polynomials via the Sylvester determinant.
/// Zero when either polynomial is zero or the two share a root in the
/// algebraic closure.
pub(crate) fn resultant(f: &Poly1, g: &Poly1) -> u64 {
    let q = f.q();
    let fp = Fp { q };
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return 0;
    };
    if m == 0 {
        return fp.pow(f.coeffs()[0], n as u64);
    }
    if n == 0 {
        return fp.pow(g.coeffs()[0], m as u64);
    }
    let size = m + n;
    // Row r < n holds f shifted by r; rows n..n+m hold g shifted.
    let mut mat = vec![0u64; size * size];
    for r in 0..n {
        for (idx, &c) in f.coeffs().iter().enumerate() {
            mat[r * size + r + (m - idx)] = c;
        }
    }
    for r in 0..m {
        for (idx, &c) in g.coeffs().iter().enumerate() {
            mat[(n + r) * size + r + (n - idx)] = c;
        }
    }
    determinant(fp, &mut mat, size)
}

fn determinant(fp: Fp, mat: &mut [u64], size: usize) -> u64 {
    let mut det = 1u64;
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| mat[r * size + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for c in 0..size {
                mat.swap(pivot * size + c, col * size + c);
            }
            det = fp.neg(det);
        }
        let p = mat[col * size + col];
        det = fp.mul(det, p);
        let inv = fp.inv(p);
        for r in col + 1..size {
            let factor = fp.mul(mat[r * size + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..size {
                let v = fp.mul(factor, mat[col * size + c]);
                mat[r * size + c] = fp.sub(mat[r * size + c], v);
            }
        }
    }
    det
}
