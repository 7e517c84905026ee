use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{PolyError, RatFun, Var};
use crate::lie::{sl, BasisIndex, Tensor2, Tensor3};
use crate::scalars::{Cyclotomic, Ring};

/// One of the three tensor slots, 1-based.
pub type Slot = u8;

/// Where the two factors of a 2-tensor go inside a triple tensor product:
/// `first` receives the left factor, `second` the right one, and the
/// remaining slot carries the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SlotPair {
    pub first: Slot,
    pub second: Slot,
}

impl SlotPair {
    pub const S12: SlotPair = SlotPair { first: 1, second: 2 };
    pub const S13: SlotPair = SlotPair { first: 1, second: 3 };
    pub const S23: SlotPair = SlotPair { first: 2, second: 3 };
    pub const S32: SlotPair = SlotPair { first: 3, second: 2 };

    pub fn new(first: Slot, second: Slot) -> Result<Self, PolyError> {
        if first == second || !(1..=3).contains(&first) || !(1..=3).contains(&second) {
            return Err(PolyError::UnknownSlot(format!("{first}{second}")));
        }
        Ok(SlotPair { first, second })
    }

    /// The slot carrying the identity.
    pub fn free(self) -> Slot {
        6 - self.first - self.second
    }

    fn contains(self, s: Slot) -> bool {
        self.first == s || self.second == s
    }
}

impl FromStr for SlotPair {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let bad = || PolyError::UnknownSlot(s.to_string());
        let d: Vec<u8> = s.bytes().collect();
        if d.len() != 2 || !d.iter().all(u8::is_ascii_digit) {
            return Err(bad());
        }
        SlotPair::new(d[0] - b'0', d[1] - b'0').map_err(|_| bad())
    }
}

impl fmt::Display for SlotPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first, self.second)
    }
}

/// A 2-tensor placed into two slots of a triple product, identity in the
/// third.
#[derive(Debug, Clone, PartialEq)]
pub struct SlotTensor {
    pub slots: SlotPair,
    pub tensor: Tensor2<RatFun>,
}

/// A tensor factor after expanding the identity slot: a basis element of
/// sl_n, or the diagonal matrix unit `e_kk` coming from `1 = Σ e_kk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotFactor {
    Sl(BasisIndex),
    Unit(usize),
}

impl SlotTensor {
    /// Entries with the identity slot written as `Σ_k e_kk`.
    pub fn identity_expanded(&self) -> BTreeMap<[SlotFactor; 3], RatFun> {
        let n = self.tensor.n();
        let mut out = BTreeMap::new();
        for (&(a, b), c) in self.tensor.entries() {
            for k in 1..=n {
                let mut key = [SlotFactor::Unit(k); 3];
                key[self.slots.first as usize - 1] = SlotFactor::Sl(a);
                key[self.slots.second as usize - 1] = SlotFactor::Sl(b);
                out.insert(key, c.clone());
            }
        }
        out
    }

    /// Expansion in `gl_n^{⊗3}` matrix units, identity written as `Σ e_kk`.
    pub fn to_gl3(&self) -> BTreeMap<[(usize, usize); 3], RatFun> {
        let n = self.tensor.n();
        let mut out: BTreeMap<[(usize, usize); 3], RatFun> = BTreeMap::new();
        for (&(a, b), c) in self.tensor.entries() {
            for (ua, ca) in a.matrix_units() {
                for (ub, cb) in b.matrix_units() {
                    for k in 1..=n {
                        let mut key = [(0, 0); 3];
                        key[self.slots.first as usize - 1] = ua;
                        key[self.slots.second as usize - 1] = ub;
                        key[self.slots.free() as usize - 1] = (k, k);
                        let v = c.scaled(&Cyclotomic::int(ca * cb));
                        let e = out.entry(key).or_insert_with(RatFun::zero);
                        *e = e.plus(&v);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// Places `t` into `slots`, renaming spectral variables by `vars`
/// (simultaneous substitution; unnamed variables stay).
pub fn embed(t: &Tensor2<RatFun>, slots: SlotPair, vars: &[(Var, Var)]) -> Result<SlotTensor, PolyError> {
    let map = |v: Var| vars.iter().find(|(s, _)| *s == v).map_or(v, |(_, t)| *t);
    let mut out = Tensor2::zero(t.n());
    for (&(a, b), c) in t.entries() {
        out.add_term(a, b, c.rename(map)?);
    }
    Ok(SlotTensor { slots, tensor: out })
}

/// Groups coefficients as `Σ_s s · T_s` with canonical shapes `s` and
/// constant tensors `T_s`; closed-form r-matrices use very few shapes.
fn by_shape(t: &Tensor2<RatFun>) -> Vec<(RatFun, Vec<((BasisIndex, BasisIndex), Cyclotomic)>)> {
    let mut groups: Vec<(RatFun, Vec<((BasisIndex, BasisIndex), Cyclotomic)>)> = Vec::new();
    for (k, c) in t.entries() {
        let (lambda, shape) = c.split_content();
        match groups.iter_mut().find(|(s, _)| *s == shape) {
            Some((_, v)) => v.push((*k, lambda)),
            None => groups.push((shape, vec![(*k, lambda)])),
        }
    }
    groups
}

/// `[u, v]` for slot embeddings sharing exactly one slot: the commutator
/// `[u_s, v_s]` lands in the shared slot `s`, the other factors stay in
/// their own slots.
pub fn bracket_slots(u: &SlotTensor, v: &SlotTensor) -> Result<Tensor3<RatFun>, PolyError> {
    let incompatible = || PolyError::IncompatibleSlots(u.slots.to_string(), v.slots.to_string());
    let shared: Vec<Slot> = (1..=3).filter(|&s| u.slots.contains(s) && v.slots.contains(s)).collect();
    if shared.len() != 1 {
        return Err(incompatible());
    }
    let n = u.tensor.n();
    if v.tensor.n() != n {
        return Err(incompatible());
    }
    let s = shared[0];
    let alg = sl(n);
    // Returns (component at shared slot, other slot, component there).
    let split = |p: SlotPair, (a, b): (BasisIndex, BasisIndex)| {
        if p.first == s {
            (a, p.second, b)
        } else {
            (b, p.first, a)
        }
    };
    let mut out = Tensor3::zero(n);
    for (su, tu) in by_shape(&u.tensor) {
        for (sv, tv) in by_shape(&v.tensor) {
            let mut acc: BTreeMap<[BasisIndex; 3], Cyclotomic> = BTreeMap::new();
            for (ku, cu) in &tu {
                let (us, uslot, uo) = split(u.slots, *ku);
                let pu = us.position(n);
                for (kv, cv) in &tv {
                    let (vs, vslot, vo) = split(v.slots, *kv);
                    let br = alg.bracket(pu, vs.position(n));
                    if br.is_empty() {
                        continue;
                    }
                    let c = cu.times(cv);
                    for &(p, m) in br {
                        let mut key = [BasisIndex::H(1); 3];
                        key[s as usize - 1] = alg.index(p);
                        key[uslot as usize - 1] = uo;
                        key[vslot as usize - 1] = vo;
                        let e = acc.entry(key).or_insert_with(Cyclotomic::zero);
                        *e = e.plus(&c.scaled(&Cyclotomic::int(m)));
                    }
                }
            }
            let shape = su.times(&sv);
            for (k, c) in acc {
                if !c.is_zero() {
                    out.add_term(k, shape.scaled(&c));
                }
            }
        }
    }
    Ok(out)
}

/// `σ` together with the exchange of the spectral variables `x ↔ y`.
pub fn flip(t: &Tensor2<RatFun>) -> Tensor2<RatFun> {
    flip_vars(t, Var::X, Var::Y)
}

/// `σ` together with the exchange of the variables `a ↔ b`.
pub fn flip_vars(t: &Tensor2<RatFun>, a: Var, b: Var) -> Tensor2<RatFun> {
    let swap = |v: Var| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    };
    t.swap_factors().map_coeffs(|c| c.rename(swap).expect("a transposition keeps distinct variables distinct"))
}
