//! The field GF(2^(6m)) together with its subfields GF(q), GF(q^2), GF(q^3).
//!
//! Everything is computed inside one copy of the big field; a subfield is
//! the fixed space of a Frobenius power and membership is a predicate, not
//! a type. Elements are coefficient vectors in the power basis of the
//! modulus, packed into a `u128` (bit `i` is the coefficient of `x^i`).

mod clmul;
mod cube;
pub mod gf2poly;
mod linear;

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use clmul::Reducer;
use linear::{rref, ByteTable, Preimage};

pub use cube::CubeRootData;

/// Largest supported `m` (field degree `6m <= 126`).
pub const MAX_M: u32 = 21;

/// A field element. Canonical: reduced modulo the field modulus, so two
/// elements are equal iff their bit vectors are.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u128);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Lowercase hex of the bit vector, no prefix.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem(0x{:x})", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

// Addition in characteristic 2 is XOR.
impl Add for Elem {
    type Output = Elem;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// The four subfields in play: GF(q), GF(q^2), GF(q^3) and the whole field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Q,
    Q2,
    Q3,
    Q6,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Q, Level::Q2, Level::Q3, Level::Q6];

    /// Degree over GF(q).
    pub fn q_power(self) -> u32 {
        match self {
            Level::Q => 1,
            Level::Q2 => 2,
            Level::Q3 => 3,
            Level::Q6 => 6,
        }
    }

    /// Degree over GF(2) for a given `m`.
    pub fn degree(self, m: u32) -> u32 {
        self.q_power() * m
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::Q => "q",
            Level::Q2 => "q2",
            Level::Q3 => "q3",
            Level::Q6 => "q6",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Level::Q),
            "q2" => Ok(Level::Q2),
            "q3" => Ok(Level::Q3),
            "q6" => Ok(Level::Q6),
            _ => Err(Error::Parse(format!("unknown level {s:?} (expected q, q2, q3 or q6)"))),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub m: u32,
    /// Irreducible polynomial of degree `6m`, bit `i` = coefficient of `x^i`.
    pub modulus: Option<u128>,
}

impl FieldParams {
    pub fn new(m: u32) -> Self {
        Self { m, modulus: None }
    }
}

/// Group orders and exponents used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CardExponents {
    pub q_minus_1: u128,
    pub q2_minus_1: u128,
    pub q3_minus_1: u128,
    pub q6_minus_1: u128,
    pub q2_minus_1_over_3: u128,
    pub q6_minus_1_over_3: u128,
    pub q2_plus_q_plus_1: u128,
}

/// Immutable description of GF(2^(6m)); shareable across threads.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    m: u32,
    n: u32,
    q: u128,
    modulus: u128,
    red: Reducer,
    // frob[k] : x -> x^(q^k), k = 0..6 (frob[0] unused)
    frob: Vec<ByteTable>,
    sqrt_map: ByteTable,
    artin_schreier: Preimage,
    f2_basis: Vec<Elem>,
    bases: [Vec<Elem>; 4],
    trace_masks: [u128; 4],
    omega: Elem,
    card: CardExponents,
    cube: CubeRootData,
}

impl FieldCtx {
    pub fn new(params: FieldParams) -> Result<Self> {
        let m = params.m;
        if !(1..=MAX_M).contains(&m) {
            return Err(Error::Range(m));
        }
        let n = 6 * m;
        let modulus = match params.modulus {
            Some(f) => {
                if gf2poly::degree(f) != Some(n) {
                    return Err(Error::Construction(format!(
                        "modulus {f:x} has degree {:?}, expected {n}",
                        gf2poly::degree(f)
                    )));
                }
                if !gf2poly::is_irreducible(f) {
                    return Err(Error::Construction(format!("modulus {f:x} is reducible")));
                }
                f
            }
            None => gf2poly::least_irreducible(n),
        };
        let red = Reducer::new(modulus);
        let unit = |i: u32| 1u128 << i;

        let square_images: Vec<u128> = (0..n).map(|i| red.mul(unit(i), unit(i))).collect();
        let square = ByteTable::from_images(&square_images);

        // x -> x^q is m squarings.
        let frob1: Vec<u128> = (0..n).map(|i| (0..m).fold(unit(i), |y, _| square.apply(y))).collect();
        let mut frob_images = vec![(0..n).map(unit).collect::<Vec<_>>(), frob1];
        let frob1_table = ByteTable::from_images(&frob_images[1]);
        for k in 2..6 {
            let next = frob_images[k - 1].iter().map(|&v| frob1_table.apply(v)).collect();
            frob_images.push(next);
        }
        let frob: Vec<ByteTable> = frob_images.iter().map(|im| ByteTable::from_images(im)).collect();

        // sqrt(x) = x^(2^(n-1))
        let sqrt_images: Vec<u128> = (0..n)
            .map(|i| (0..n - 1).fold(unit(i), |y, _| square.apply(y)))
            .collect();
        let sqrt_map = ByteTable::from_images(&sqrt_images);

        let as_images: Vec<u128> = (0..n).map(|i| square_images[i as usize] ^ unit(i)).collect();
        let (artin_schreier, f2_kernel) = Preimage::new(&as_images);
        let f2_basis: Vec<Elem> = rref(&f2_kernel).into_iter().map(Elem).collect();

        let mut bases: [Vec<Elem>; 4] = Default::default();
        for (slot, level) in Level::ALL.iter().enumerate() {
            let k = level.q_power() as usize % 6;
            let images: Vec<u128> = frob_images[k]
                .iter()
                .enumerate()
                .map(|(i, &v)| v ^ unit(i as u32))
                .collect();
            let (_, kernel) = Preimage::new(&images);
            let basis: Vec<Elem> = rref(&kernel).into_iter().map(Elem).collect();
            if basis.len() as u32 != level.degree(m) {
                return Err(Error::Construction(format!(
                    "subfield {level} has dimension {} (expected {})",
                    basis.len(),
                    level.degree(m)
                )));
            }
            bases[slot] = basis;
        }

        // mask bit j = Tr_level(x^j), valid for arguments inside the level.
        let mut trace_masks = [0u128; 4];
        for (slot, level) in Level::ALL.iter().enumerate() {
            let d = level.degree(m);
            let mut mask = 0u128;
            for j in 0..n {
                let mut y = unit(j);
                let mut acc = 0u128;
                for _ in 0..d {
                    acc ^= y;
                    y = square.apply(y);
                }
                mask |= (acc & 1) << j;
            }
            trace_masks[slot] = mask;
        }

        let w = artin_schreier
            .solve(1)
            .ok_or_else(|| Error::Construction("no root of X^2+X+1".into()))?;
        let omega = Elem(w.min(w ^ 1));

        let q = 1u128 << m;
        let q6_minus_1 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        let card = CardExponents {
            q_minus_1: q - 1,
            q2_minus_1: q * q - 1,
            q3_minus_1: q * q * q - 1,
            q6_minus_1,
            q2_minus_1_over_3: (q * q - 1) / 3,
            q6_minus_1_over_3: q6_minus_1 / 3,
            q2_plus_q_plus_1: q * q + q + 1,
        };

        let mut ctx = FieldCtx {
            m,
            n,
            q,
            modulus,
            red,
            frob,
            sqrt_map,
            artin_schreier,
            f2_basis,
            bases,
            trace_masks,
            omega,
            card,
            cube: CubeRootData::placeholder(),
        };
        ctx.cube = CubeRootData::compute(&ctx);
        Ok(ctx)
    }

    pub fn with_m(m: u32) -> Result<Self> {
        Self::new(FieldParams::new(m))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// q = 2^m.
    pub fn q(&self) -> u128 {
        self.q
    }

    /// Degree of the whole field over GF(2), i.e. 6m.
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    pub fn card(&self) -> &CardExponents {
        &self.card
    }

    pub fn params(&self) -> FieldParams {
        FieldParams {
            m: self.m,
            modulus: Some(self.modulus),
        }
    }

    /// Basis of the prime field GF(2), i.e. `[1]`.
    pub fn f2_basis(&self) -> &[Elem] {
        &self.f2_basis
    }

    pub fn basis(&self, level: Level) -> &[Elem] {
        &self.bases[level as usize]
    }

    /// Checked constructor from a raw bit vector.
    pub fn elem(&self, bits: u128) -> Result<Elem> {
        if self.n < 128 && bits >> self.n != 0 {
            return Err(Error::Parse(format!(
                "{bits:x} has more than {} bits and is not a reduced field element",
                self.n
            )));
        }
        Ok(Elem(bits))
    }

    /// Reduces an arbitrary bit pattern into the field by masking.
    pub fn elem_masked(&self, bits: u128) -> Elem {
        Elem(bits & ((1u128 << self.n) - 1))
    }

    // ---- arithmetic ----

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.red.mul(x.0, y.0))
    }

    #[inline]
    pub fn square(&self, x: Elem) -> Elem {
        Elem(self.red.mul(x.0, x.0))
    }

    #[inline]
    pub fn cube(&self, x: Elem) -> Elem {
        self.mul(self.square(x), x)
    }

    /// `x^e` by square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, x: Elem, e: u128) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        let mut acc = Elem::ONE;
        for i in (0..128 - e.leading_zeros()).rev() {
            acc = self.square(acc);
            if (e >> i) & 1 == 1 {
                acc = self.mul(acc, x);
            }
        }
        acc
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(self.pow(x, self.card.q6_minus_1 - 1))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^(q^k)`. Only `k mod 6` matters on the whole field.
    #[inline]
    pub fn frobenius_q(&self, x: Elem, k: u64) -> Elem {
        let k = (k % 6) as usize;
        if k == 0 {
            x
        } else {
            Elem(self.frob[k].apply(x.0))
        }
    }

    pub fn is_in(&self, x: Elem, level: Level) -> bool {
        level == Level::Q6 || self.frobenius_q(x, level.q_power() as u64) == x
    }

    pub fn require_in(&self, x: Elem, level: Level, what: &'static str) -> Result<()> {
        if self.is_in(x, level) {
            Ok(())
        } else {
            Err(Error::Membership { what, level })
        }
    }

    pub fn is_in_f2(&self, x: Elem) -> bool {
        x.0 <= 1
    }

    /// x in GF(4): x^4 = x.
    pub fn is_in_f4(&self, x: Elem) -> bool {
        self.square(self.square(x)) == x
    }

    // ---- enumeration ----

    pub fn subfield_size(&self, level: Level) -> u128 {
        1u128 << level.degree(self.m)
    }

    /// The element whose coordinates over the stored basis are the bits of `index`.
    #[inline]
    pub fn subfield_element(&self, level: Level, index: u128) -> Elem {
        let basis = self.basis(level);
        let mut acc = 0u128;
        let mut i = index;
        while i != 0 {
            let j = i.trailing_zeros() as usize;
            acc ^= basis[j].0;
            i &= i - 1;
        }
        Elem(acc)
    }

    /// All elements of a level, each exactly once, in coordinate order.
    pub fn enumerate(&self, level: Level) -> impl Iterator<Item = Elem> + '_ {
        (0..self.subfield_size(level)).map(move |i| self.subfield_element(level, i))
    }

    // ---- traces, square roots, Artin-Schreier ----

    /// Absolute trace of `x` from the given level down to GF(2).
    pub fn abs_trace(&self, x: Elem, level: Level) -> Result<u8> {
        self.require_in(x, level, "trace argument")?;
        Ok(self.trace_unchecked(x, level))
    }

    #[inline]
    pub(crate) fn trace_unchecked(&self, x: Elem, level: Level) -> u8 {
        ((x.0 & self.trace_masks[level as usize]).count_ones() & 1) as u8
    }

    /// The unique `y` with `y^2 = x`.
    pub fn sqrt(&self, x: Elem) -> Elem {
        Elem(self.sqrt_map.apply(x.0))
    }

    /// Both solutions of `X^2 + X = d` inside the level (smaller encoding
    /// first), or `None` when the level trace of `d` is 1.
    pub fn artin_schreier(&self, d: Elem, level: Level) -> Result<Option<[Elem; 2]>> {
        self.require_in(d, level, "Artin-Schreier constant")?;
        if self.trace_unchecked(d, level) == 1 {
            return Ok(None);
        }
        let x = self
            .artin_schreier
            .solve(d.0)
            .ok_or_else(|| Error::Verification(format!("X^2+X={d} unsolvable despite zero trace")))?;
        let (lo, hi) = (x.min(x ^ 1), x.max(x ^ 1));
        Ok(Some([Elem(lo), Elem(hi)]))
    }

    // ---- characters and roots of unity ----

    pub fn omega_pow(&self, omega: Elem, j: u32) -> Elem {
        match j % 3 {
            0 => Elem::ONE,
            1 => omega,
            _ => self.square(omega),
        }
    }

    /// The `j` with `y^((q^2-1)/3) = omega^j` for the context's omega.
    pub fn cubic_character(&self, y: Elem) -> Result<u8> {
        self.cubic_character_with(y, self.omega)
    }

    /// Same as [`cubic_character`](Self::cubic_character) relative to an
    /// explicitly chosen primitive cube root of unity.
    pub fn cubic_character_with(&self, y: Elem, omega: Elem) -> Result<u8> {
        if y.is_zero() {
            return Err(Error::Domain("cubic character of 0".into()));
        }
        self.require_in(y, Level::Q2, "cubic character argument")?;
        let r = self.pow(y, self.card.q2_minus_1_over_3);
        if r == Elem::ONE {
            Ok(0)
        } else if r == omega {
            Ok(1)
        } else if r == self.square(omega) {
            Ok(2)
        } else {
            Err(Error::Verification(format!(
                "{y}^((q^2-1)/3) = {r} is not a cube root of unity"
            )))
        }
    }

    /// `x != 0`, `x` in GF(q^3) and `x^(q^2+q+1) = 1`.
    pub fn mu_membership(&self, x: Elem) -> bool {
        !x.is_zero() && self.is_in(x, Level::Q3) && self.pow(x, self.card.q2_plus_q_plus_1) == Elem::ONE
    }
}
