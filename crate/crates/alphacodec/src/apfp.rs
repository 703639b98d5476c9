//! Arbitrary-precision fixed-point arithmetic on the unit interval.
//!
//! [`UnitReal`] represents a value in [0, 1) as an explicit run of binary
//! digits `b1 b2 … bp` with weights `1/2^i` — exactly the fixed-point
//! discretization the codecs are defined over. Precision is part of the value
//! and is never silently reduced: every operation states what happens to it.
//!
//! Two properties are load-bearing for everything built on top:
//!
//! * **Truncation, never rounding.** Conversions floor, so errors are
//!   one-sided (`value ≤ true value`) and the `2^-tau` per-sample bound of the
//!   codecs holds by construction. The single deliberate exception is
//!   [`UnitReal::from_decimal_fraction_recover`], the exact inverse of
//!   [`UnitReal::to_decimal_string`] used when reading a value back from its
//!   printed decimal form.
//! * **Bit-string semantics.** The observable contract is the digit sequence;
//!   the limb layout underneath is private and irrelevant to callers.
//!
//! Values exactly equal to 1.0 (legal inputs after min-max normalization)
//! are clamped to the all-ones word `1 - 2^-p`, which keeps every stated
//! error bound valid while staying inside [0, 1).

use crate::{Error, Result};
use std::cmp::Ordering;

/// log10(2), used to convert a bit budget into a decimal-digit budget.
const LOG10_2: f64 = 0.301_029_995_663_981_2;

// ---------------------------------------------------------------------------
// Limb helpers. Little-endian order: limbs[0] is the least significant.
// All functions operate on equal-length slices unless stated otherwise.
// ---------------------------------------------------------------------------

fn le_cmp(a: &[u64], b: &[u64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// a += b, returning the carry out of the top limb.
fn le_add_assign(a: &mut [u64], b: &[u64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut carry = false;
    for i in 0..a.len() {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        a[i] = s2;
        carry = c1 || c2;
    }
    carry
}

/// a -= b, returning the borrow out of the top limb.
fn le_sub_assign(a: &mut [u64], b: &[u64]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let mut borrow = false;
    for i in 0..a.len() {
        let (d1, b1) = a[i].overflowing_sub(b[i]);
        let (d2, b2) = d1.overflowing_sub(borrow as u64);
        a[i] = d2;
        borrow = b1 || b2;
    }
    borrow
}

/// a *= k, returning the carry out of the top limb.
fn le_mul_small_assign(a: &mut [u64], k: u64) -> u64 {
    let mut carry: u64 = 0;
    for limb in a.iter_mut() {
        let prod = (*limb as u128) * (k as u128) + carry as u128;
        *limb = prod as u64;
        carry = (prod >> 64) as u64;
    }
    carry
}

/// a /= k (floor), returning the remainder. k must be nonzero.
fn le_div_small_assign(a: &mut [u64], k: u64) -> u64 {
    let mut rem: u128 = 0;
    for i in (0..a.len()).rev() {
        let cur = (rem << 64) | a[i] as u128;
        a[i] = (cur / k as u128) as u64;
        rem = cur % k as u128;
    }
    rem as u64
}

/// a <<= s, discarding bits shifted out the top.
fn le_shl(a: &mut [u64], s: usize) {
    let n = a.len();
    if n == 0 {
        return;
    }
    let limb_shift = s / 64;
    let bit_shift = s % 64;
    if limb_shift >= n {
        a.fill(0);
        return;
    }
    for i in (0..n).rev() {
        let lo = if i >= limb_shift { a[i - limb_shift] } else { 0 };
        let carry_in = if bit_shift > 0 && i > limb_shift {
            a[i - limb_shift - 1] >> (64 - bit_shift)
        } else {
            0
        };
        a[i] = if bit_shift == 0 { lo } else { (lo << bit_shift) | carry_in };
    }
}

/// a >>= s, discarding bits shifted out the bottom.
fn le_shr(a: &mut [u64], s: usize) {
    let n = a.len();
    if n == 0 {
        return;
    }
    let limb_shift = s / 64;
    let bit_shift = s % 64;
    if limb_shift >= n {
        a.fill(0);
        return;
    }
    for i in 0..n {
        let hi = if i + limb_shift < n { a[i + limb_shift] } else { 0 };
        let carry_in = if bit_shift > 0 && i + limb_shift + 1 < n {
            a[i + limb_shift + 1] << (64 - bit_shift)
        } else {
            0
        };
        a[i] = if bit_shift == 0 { hi } else { (hi >> bit_shift) | carry_in };
    }
}

/// Schoolbook product of two n-limb numbers into a fresh 2n-limb number.
fn le_mul_full(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0u64; 2 * n];
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        let mut carry: u128 = 0;
        for j in 0..n {
            let cur = out[i + j] as u128 + (a[i] as u128) * (b[j] as u128) + carry;
            out[i + j] = cur as u64;
            carry = cur >> 64;
        }
        let mut idx = i + n;
        while carry > 0 {
            let cur = out[idx] as u128 + carry;
            out[idx] = cur as u64;
            carry = cur >> 64;
            idx += 1;
        }
    }
    out
}

/// Floor square root of a little-endian big integer, bit-by-bit restoring
/// method. The result has ceil(len/2) significant limbs but is returned at
/// full input width for the caller to slice.
fn le_isqrt(n_in: &[u64]) -> Vec<u64> {
    let n_limbs = n_in.len();
    let mut x = n_in.to_vec(); // running remainder
    let mut res = vec![0u64; n_limbs];
    // highest power of four not exceeding the input
    let total_bits = 64 * n_limbs;
    let top = {
        let mut t = None;
        'outer: for i in (0..n_limbs).rev() {
            if n_in[i] != 0 {
                for b in (0..64).rev() {
                    if n_in[i] >> b & 1 == 1 {
                        t = Some(i * 64 + b);
                        break 'outer;
                    }
                }
            }
        }
        match t {
            Some(t) => t,
            None => return res, // sqrt(0)
        }
    };
    let mut bit_pos = top & !1; // even position: a power of four
    let mut bit = vec![0u64; n_limbs];
    let mut tmp = vec![0u64; n_limbs];
    loop {
        // tmp = res + bit
        bit.fill(0);
        bit[bit_pos / 64] = 1u64 << (bit_pos % 64);
        tmp.copy_from_slice(&res);
        let carry = le_add_assign(&mut tmp, &bit);
        debug_assert!(!carry);
        if le_cmp(&x, &tmp) != Ordering::Less {
            let borrow = le_sub_assign(&mut x, &tmp);
            debug_assert!(!borrow);
            le_shr(&mut res, 1);
            let carry = le_add_assign(&mut res, &bit);
            debug_assert!(!carry);
        } else {
            le_shr(&mut res, 1);
        }
        if bit_pos < 2 {
            break;
        }
        bit_pos -= 2;
    }
    let _ = total_bits;
    res
}

// ---------------------------------------------------------------------------
// UnitReal
// ---------------------------------------------------------------------------

/// A fixed-point real in [0, 1): an explicit sequence of `precision` binary
/// digits, most significant first, with weight `1/2^i` for digit `i`.
///
/// Internally the digits sit in the **top** `precision` bits of a little-endian
/// limb vector, so the represented value is `raw / 2^(64 * limbs)`; every bit
/// below the precision cutoff is kept at zero. Values are immutable: all
/// operations return fresh values, so they are freely shareable across threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitReal {
    limbs: Vec<u64>, // little-endian, value = raw / 2^(64*len), top-aligned
    bits: usize,     // precision p; limbs.len() == ceil(p/64)
}

impl std::fmt::Debug for UnitReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let shown = self.bits.min(96);
        let mut s: String = (1..=shown).map(|i| if self.bit(i) == 1 { '1' } else { '0' }).collect();
        if shown < self.bits {
            s.push('…');
        }
        write!(f, "UnitReal(0.{s}, p={})", self.bits)
    }
}

fn limbs_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

impl UnitReal {
    /// Zero at the requested precision.
    pub fn zero(bits: usize) -> Self {
        UnitReal { limbs: vec![0; limbs_for(bits)], bits }
    }

    /// The largest representable value, `1 - 2^-bits` (every digit set).
    /// This is also the clamp target for inputs exactly equal to 1.0.
    pub fn all_ones(bits: usize) -> Self {
        let mut v = UnitReal { limbs: vec![u64::MAX; limbs_for(bits)], bits };
        v.mask_tail();
        v
    }

    /// The power `2^-j` (digit `j` set, all others clear). Requires
    /// `1 ≤ j ≤ bits`.
    pub fn pow2_inv(j: usize, bits: usize) -> Self {
        assert!(j >= 1 && j <= bits, "2^-{j} is not representable in {bits} bits");
        let mut v = UnitReal::zero(bits);
        v.set_bit(j);
        v
    }

    /// Number of significant binary digits.
    pub fn precision(&self) -> usize {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Number of leading zero digits; equals the precision when the value is
    /// zero. A return of `j` certifies value < 2^-j.
    pub fn leading_zeros(&self) -> usize {
        let mut zeros = 0;
        for i in (0..self.limbs.len()).rev() {
            if self.limbs[i] == 0 {
                zeros += 64;
            } else {
                zeros += self.limbs[i].leading_zeros() as usize;
                break;
            }
        }
        zeros.min(self.bits)
    }

    /// Digit `i` (1-indexed from the most significant; weight `1/2^i`).
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.bits, "bit index {i} out of 1..={}", self.bits);
        let pos = 64 * self.limbs.len() - i; // position counted from the LSB
        (self.limbs[pos / 64] >> (pos % 64) & 1) as u8
    }

    fn set_bit(&mut self, i: usize) {
        let pos = 64 * self.limbs.len() - i;
        self.limbs[pos / 64] |= 1u64 << (pos % 64);
    }

    /// Zero every stored bit below the precision cutoff.
    fn mask_tail(&mut self) {
        let spare = 64 * self.limbs.len() - self.bits;
        if spare > 0 && !self.limbs.is_empty() {
            let full = spare / 64;
            for i in 0..full {
                self.limbs[i] = 0;
            }
            let rem = spare % 64;
            if rem > 0 {
                self.limbs[full] &= !0u64 << rem;
            }
        }
    }

    fn assert_same_precision(&self, other: &Self, op: &str) {
        assert_eq!(
            self.bits, other.bits,
            "{op}: operands must share a working precision ({} vs {})",
            self.bits, other.bits
        );
    }

    // -- conversions --------------------------------------------------------

    /// Parse a binary digit string (MSB first, no radix point). The precision
    /// of the result is exactly the string length; the empty string is zero at
    /// precision 0.
    pub fn from_binary_string(s: &str) -> Result<Self> {
        let mut v = UnitReal::zero(s.len());
        for (idx, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set_bit(idx + 1),
                other => {
                    return Err(Error::Parse(format!(
                        "binary string may contain only '0'/'1', found {other:?} at position {idx}"
                    )))
                }
            }
        }
        Ok(v)
    }

    /// Render all `precision` digits, MSB first.
    pub fn to_binary_string(&self) -> String {
        (1..=self.bits).map(|i| if self.bit(i) == 1 { '1' } else { '0' }).collect()
    }

    /// Parse a decimal fraction by the truncating doubling fold: digit `i` of
    /// the result is 1 iff the running value is ≥ 1/2 before each doubling.
    /// The value error is one-sided and below `2^-target_bits`.
    ///
    /// Accepted forms: `0.5488135`, `.25`, `5488135` (a bare digit run is read
    /// as its fractional digits), `0`, and `1`/`1.0…0`, the last of which is
    /// clamped to the all-ones word. Anything else is a parse error; values
    /// above 1 are a domain error.
    pub fn from_decimal_fraction(s: &str, target_bits: usize) -> Result<Self> {
        let (int_one, digits) = Self::split_decimal(s)?;
        if int_one {
            return if digits.iter().all(|&d| d == 0) {
                Ok(UnitReal::all_ones(target_bits))
            } else {
                Err(Error::Domain(format!("decimal value {s:?} is greater than 1")))
            };
        }
        Ok(Self::fold_digits(&digits, target_bits).0)
    }

    /// Parse a decimal string produced by [`Self::to_decimal_string`] back to
    /// the exact bits it was printed from: truncated printing always
    /// undershoots, so recovery takes the ceiling instead of the floor. When
    /// the decimal is exact the two agree; otherwise this adds one ulp. A
    /// string within one ulp of 1.0 clamps to all-ones.
    pub fn from_decimal_fraction_recover(s: &str, target_bits: usize) -> Result<Self> {
        let (int_one, digits) = Self::split_decimal(s)?;
        if int_one {
            return if digits.iter().all(|&d| d == 0) {
                Ok(UnitReal::all_ones(target_bits))
            } else {
                Err(Error::Domain(format!("decimal value {s:?} is greater than 1")))
            };
        }
        let (mut v, exact) = Self::fold_digits(&digits, target_bits);
        if !exact {
            let mut one_ulp = UnitReal::zero(target_bits);
            if target_bits > 0 {
                one_ulp.set_bit(target_bits);
            }
            match v.add(&one_ulp) {
                Ok(bumped) => v = bumped,
                Err(_) => v = UnitReal::all_ones(target_bits),
            }
        }
        Ok(v)
    }

    /// Split a decimal string into (is_integer_one, fraction digit bytes).
    fn split_decimal(s: &str) -> Result<(bool, Vec<u8>)> {
        if s.is_empty() {
            return Err(Error::Parse("empty decimal string".into()));
        }
        let (int_part, frac_part) = match s.find('.') {
            Some(dot) => (&s[..dot], &s[dot + 1..]),
            None => {
                // A bare digit run: single "0"/"1" are integer values, anything
                // longer is a fraction-digit run ("5488135" == "0.5488135").
                if s == "0" {
                    ("0", "")
                } else if s == "1" {
                    ("1", "")
                } else {
                    ("", s)
                }
            }
        };
        let int_one = match int_part {
            "" | "0" => false,
            "1" => true,
            other => {
                return Err(Error::Parse(format!(
                    "decimal integer part must be empty, 0 or 1, found {other:?}"
                )))
            }
        };
        let mut digits = Vec::with_capacity(frac_part.len());
        for (idx, ch) in frac_part.chars().enumerate() {
            match ch.to_digit(10) {
                Some(d) => digits.push(d as u8),
                None => {
                    return Err(Error::Parse(format!(
                        "decimal string may contain only digits, found {ch:?} at position {idx}"
                    )))
                }
            }
        }
        Ok((int_one, digits))
    }

    /// The doubling fold over a decimal digit vector. Returns the truncated
    /// value and whether the conversion was exact (no residue left).
    fn fold_digits(digits: &[u8], target_bits: usize) -> (Self, bool) {
        let mut v = UnitReal::zero(target_bits);
        let mut acc: Vec<u8> = digits.to_vec();
        // trim trailing zeros once up front so exhaustion is detected early
        while acc.last() == Some(&0) {
            acc.pop();
        }
        for i in 1..=target_bits {
            if acc.is_empty() {
                return (v, true);
            }
            // acc *= 2 in base 10; the carry out of the leading digit is the bit
            let mut carry = 0u8;
            for d in acc.iter_mut().rev() {
                let doubled = *d * 2 + carry;
                *d = doubled % 10;
                carry = doubled / 10;
            }
            if carry == 1 {
                v.set_bit(i);
            }
            while acc.last() == Some(&0) {
                acc.pop();
            }
        }
        (v, acc.is_empty())
    }

    /// Decimal expansion truncated to `digits` fractional digits, rendered as
    /// `0.` followed by exactly that many digits. With `digits` at least the
    /// budget's `p_dec`, the printed form is lossless for this precision (see
    /// [`Self::from_decimal_fraction_recover`]).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let mut out = String::with_capacity(digits + 2);
        out.push_str("0.");
        let mut work = self.limbs.clone();
        for _ in 0..digits {
            let carry = le_mul_small_assign(&mut work, 10);
            debug_assert!(carry < 10);
            out.push(char::from(b'0' + carry as u8));
        }
        out
    }

    /// Exact binary expansion of an f64 in [0, 1]; 1.0 clamps to all-ones.
    /// Doubling and integer-part extraction are exact in binary floating
    /// point, so no digit is ever misread.
    pub fn from_f64(x: f64, bits: usize) -> Result<Self> {
        if !x.is_finite() || !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("sample {x} is outside [0, 1]")));
        }
        if x == 1.0 {
            return Ok(UnitReal::all_ones(bits));
        }
        let mut v = UnitReal::zero(bits);
        let mut acc = x;
        for i in 1..=bits {
            if acc == 0.0 {
                break;
            }
            acc *= 2.0;
            if acc >= 1.0 {
                v.set_bit(i);
                acc -= 1.0;
            }
        }
        Ok(v)
    }

    /// Nearest-enough f64 (reads the top 128 bits; plenty for any reporting
    /// use — the represented value is within 2^-128 of the return).
    pub fn to_f64(&self) -> f64 {
        let n = self.limbs.len();
        if n == 0 {
            return 0.0;
        }
        let hi = self.limbs[n - 1] as f64;
        let lo = if n >= 2 { self.limbs[n - 2] as f64 } else { 0.0 };
        hi * 2.0f64.powi(-64) + lo * 2.0f64.powi(-128)
    }

    /// Exact truncation of the rational num/den (requires num < den, den > 0).
    pub fn from_ratio(num: u64, den: u64, bits: usize) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("ratio denominator is zero".into()));
        }
        if num >= den {
            return Err(Error::Domain(format!("ratio {num}/{den} is not below 1")));
        }
        let n_limbs = limbs_for(bits);
        let mut limbs = vec![0u64; n_limbs];
        let mut rem = num as u128;
        for i in (0..n_limbs).rev() {
            let cur = rem << 64;
            limbs[i] = (cur / den as u128) as u64;
            rem = cur % den as u128;
        }
        let mut v = UnitReal { limbs, bits };
        v.mask_tail();
        Ok(v)
    }

    // -- precision management ------------------------------------------------

    /// Same value at a different precision: extending pads with zero digits
    /// (exact), shrinking truncates (floor).
    pub fn resized(&self, bits: usize) -> Self {
        if bits == self.bits {
            return self.clone();
        }
        let new_len = limbs_for(bits);
        let old_len = self.limbs.len();
        let mut limbs = self.limbs.clone();
        limbs.resize(new_len.max(old_len), 0);
        if new_len >= old_len {
            // top-alignment is preserved by sliding the limbs up by the delta
            limbs.rotate_right(new_len - old_len);
            limbs.truncate(new_len);
        } else {
            limbs.rotate_left(old_len - new_len);
            limbs.truncate(new_len);
        }
        let mut v = UnitReal { limbs, bits };
        v.mask_tail();
        v
    }

    // -- the dyadic shift ----------------------------------------------------

    /// `2^m * value mod 1`, realized by discarding the first `m` digits.
    /// Precision drops to `precision - m`; equals `m` compositions of the
    /// doubling map. Asking for `m ≥ precision` exhausts the payload.
    pub fn shift_mod1(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Ok(self.clone());
        }
        if m >= self.bits {
            return Err(Error::PrecisionExhausted(format!(
                "shift by {m} digits exceeds the {} digits available",
                self.bits
            )));
        }
        let new_bits = self.bits - m;
        let mut limbs = self.limbs.clone();
        le_shl(&mut limbs, m);
        let dropped = limbs.len() - limbs_for(new_bits);
        limbs.rotate_left(dropped);
        limbs.truncate(limbs_for(new_bits));
        let mut v = UnitReal { limbs, bits: new_bits };
        v.mask_tail();
        Ok(v)
    }

    // -- ring operations -----------------------------------------------------

    /// Sum, which must stay below 1 (use [`Self::add_mod1`] to wrap instead).
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.assert_same_precision(other, "add");
        let mut limbs = self.limbs.clone();
        if le_add_assign(&mut limbs, &other.limbs) {
            return Err(Error::Overflow);
        }
        Ok(UnitReal { limbs, bits: self.bits })
    }

    /// Sum modulo 1 (the carry out of the leading digit is discarded).
    pub fn add_mod1(&self, other: &Self) -> Self {
        self.assert_same_precision(other, "add_mod1");
        let mut limbs = self.limbs.clone();
        le_add_assign(&mut limbs, &other.limbs);
        UnitReal { limbs, bits: self.bits }
    }

    /// Difference, which must be nonnegative (wrap with [`Self::sub_mod1`]).
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.assert_same_precision(other, "sub");
        let mut limbs = self.limbs.clone();
        if le_sub_assign(&mut limbs, &other.limbs) {
            return Err(Error::Overflow);
        }
        Ok(UnitReal { limbs, bits: self.bits })
    }

    /// Difference modulo 1.
    pub fn sub_mod1(&self, other: &Self) -> Self {
        self.assert_same_precision(other, "sub_mod1");
        let mut limbs = self.limbs.clone();
        le_sub_assign(&mut limbs, &other.limbs);
        UnitReal { limbs, bits: self.bits }
    }

    /// `1 - value`, exact for nonzero inputs; zero clamps to all-ones.
    pub fn one_minus(&self) -> Self {
        if self.is_zero() {
            return UnitReal::all_ones(self.bits);
        }
        // 1 - x = (2^p - raw) / 2^p: two's complement of the raw integer.
        let mut limbs: Vec<u64> = self.limbs.iter().map(|&l| !l).collect();
        let one_ulp_pos = 64 * limbs.len() - self.bits;
        let mut inc = vec![0u64; limbs.len()];
        inc[one_ulp_pos / 64] = 1u64 << (one_ulp_pos % 64);
        le_add_assign(&mut limbs, &inc);
        let mut v = UnitReal { limbs, bits: self.bits };
        v.mask_tail();
        v
    }

    /// Product, truncated to the shared precision (error below one ulp).
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_precision(other, "mul");
        if self.limbs.is_empty() {
            return self.clone();
        }
        let full = le_mul_full(&self.limbs, &other.limbs);
        let n = self.limbs.len();
        let mut v = UnitReal { limbs: full[n..].to_vec(), bits: self.bits };
        v.mask_tail();
        v
    }

    /// Product with a small integer; errors if the result reaches 1.
    pub fn mul_small(&self, k: u64) -> Result<Self> {
        let mut limbs = self.limbs.clone();
        if le_mul_small_assign(&mut limbs, k) != 0 {
            return Err(Error::Overflow);
        }
        Ok(UnitReal { limbs, bits: self.bits })
    }

    /// Quotient by a small integer, truncated to the precision. k ≥ 1.
    pub fn div_small(&self, k: u64) -> Self {
        assert!(k > 0, "div_small by zero");
        let mut limbs = self.limbs.clone();
        le_div_small_assign(&mut limbs, k);
        let mut v = UnitReal { limbs, bits: self.bits };
        v.mask_tail();
        v
    }

    /// Floor square root at the same precision (result² ≤ value).
    pub fn sqrt(&self) -> Self {
        if self.limbs.is_empty() {
            return self.clone();
        }
        // sqrt(raw / 2^(64L)) = isqrt(raw << 64L) / 2^(64L)
        let n = self.limbs.len();
        let mut wide = vec![0u64; 2 * n];
        wide[n..].copy_from_slice(&self.limbs);
        let root = le_isqrt(&wide);
        let mut v = UnitReal { limbs: root[..n].to_vec(), bits: self.bits };
        v.mask_tail();
        v
    }

    /// Order by represented value (operands must share a precision; use
    /// [`Self::resized`] first when they do not).
    pub fn compare(&self, other: &Self) -> Ordering {
        self.assert_same_precision(other, "compare");
        le_cmp(&self.limbs, &other.limbs)
    }
}

// ---------------------------------------------------------------------------
// Precision budgeting
// ---------------------------------------------------------------------------

/// Default number of guard bits appended to every payload: enough to keep
/// transcendental-evaluation truncation error out of the payload digits.
pub const DEFAULT_GUARD: u32 = 32;

/// How many bits (and decimal digits) a dataset of `n` samples at `tau` bits
/// per sample requires.
///
/// `p_bin` budgets one spare sample's width on top of the payload —
/// `(n + 1) * tau` — plus the guard; `p_dec` is the decimal-digit equivalent,
/// `ceil(p_bin * log10 2)` (the ≈0.301 digits-per-bit factor).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionBudget {
    pub n: usize,
    pub tau: u32,
    pub guard: u32,
    pub p_bin: usize,
    pub p_dec: usize,
}

impl PrecisionBudget {
    /// Budget with the default guard of [`DEFAULT_GUARD`] bits.
    pub fn required_precision(n: usize, tau: u32) -> Self {
        Self::required_precision_with_guard(n, tau, DEFAULT_GUARD)
    }

    /// Budget with an explicit guard (0 reproduces the bare payload numbers).
    pub fn required_precision_with_guard(n: usize, tau: u32, guard: u32) -> Self {
        assert!(n >= 1, "sample count must be at least 1");
        assert!(tau >= 1, "tau must be at least 1");
        let p_bin = (n + 1) * tau as usize + guard as usize;
        PrecisionBudget { n, tau, guard, p_bin, p_dec: decimal_digits_for(p_bin) }
    }

    /// Payload width alone: `n * tau` bits, the exact length of an encoded
    /// alpha's digit string.
    pub fn payload_bits(&self) -> usize {
        self.n * self.tau as usize
    }
}

/// Decimal digits needed to carry `bits` binary digits losslessly.
pub fn decimal_digits_for(bits: usize) -> usize {
    (bits as f64 * LOG10_2).ceil() as usize
}
