use std::fmt;

use super::primes::{inv_mod, mul_mod};

/// An element of F_ell, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    pub value: u64,
    pub modulus: u64,
}

impl ModInt {
    pub fn new(value: i128, modulus: u64) -> Self {
        let m = modulus as i128;
        ModInt { value: value.rem_euclid(m) as u64, modulus }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, o.modulus);
        ModInt::new(self.value as i128 + o.value as i128, self.modulus)
    }

    pub fn sub(self, o: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, o.modulus);
        ModInt::new(self.value as i128 - o.value as i128, self.modulus)
    }

    pub fn mul(self, o: ModInt) -> ModInt {
        debug_assert_eq!(self.modulus, o.modulus);
        ModInt { value: mul_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }

    pub fn inv(self) -> Option<ModInt> {
        inv_mod(self.value, self.modulus).map(|value| ModInt { value, modulus: self.modulus })
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_7() {
        let a = ModInt::new(-1, 7);
        assert_eq!(a.value, 6);
        assert_eq!(a.mul(a).value, 1);
        assert_eq!(a.inv().unwrap(), a);
        assert_eq!(ModInt::new(3, 7).inv().unwrap().value, 5);
        assert!(ModInt::new(0, 7).inv().is_none());
        assert_eq!(a.to_string(), "6 mod 7");
    }
}
