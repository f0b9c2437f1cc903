use super::matrix::{Int, IntMatrix};
use num::traits::{One, Signed, Zero};
use num::Integer;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;

/// Element of Q/Z stored as the reduced fraction in [0, 1):
/// 0 <= num < den, gcd(num, den) = 1, den >= 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Deserialize)]
#[serde(try_from = "String")]
pub struct QmodZ {
    num: Int,
    den: Int,
}

impl QmodZ {
    pub fn from_ints(num: Int, den: Int) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut num = num;
        let mut den = den;
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        num = num.mod_floor(&den);
        let g = num.gcd(&den);
        QmodZ { num: num / &g, den: den / g }
    }

    pub fn new(num: i64, den: i64) -> Self {
        Self::from_ints(Int::from(num), Int::from(den))
    }

    pub fn zero() -> Self {
        QmodZ { num: Int::zero(), den: Int::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &Int {
        &self.num
    }

    /// Denominator of the reduced representative; equals the additive order.
    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn add(&self, other: &QmodZ) -> QmodZ {
        QmodZ::from_ints(&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
    }

    pub fn sub(&self, other: &QmodZ) -> QmodZ {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QmodZ {
        QmodZ::from_ints(-self.num.clone(), self.den.clone())
    }

    pub fn scale(&self, k: &Int) -> QmodZ {
        QmodZ::from_ints(&self.num * k, self.den.clone())
    }

    /// A witness u with s*u = self in Q/Z; requires s != 0. Q/Z is divisible,
    /// so this always succeeds (one of |s| many preimages is returned).
    pub fn div_by_int(&self, s: &Int) -> QmodZ {
        assert!(!s.is_zero(), "division by zero");
        QmodZ::from_ints(self.num.clone(), &self.den * s)
    }

    /// Canonical lift to Q: the representative (num, den) with value in [0,1).
    pub fn lift(&self) -> (Int, Int) {
        (self.num.clone(), self.den.clone())
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: Int = a.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
            let den: Int = b.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
            if den.is_zero() {
                return Err(format!("zero denominator in '{s}'"));
            }
            Ok(QmodZ::from_ints(num, den))
        } else {
            let num: Int = s.parse().map_err(|_| format!("bad integer '{s}'"))?;
            Ok(QmodZ::from_ints(num, Int::one()))
        }
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl TryFrom<String> for QmodZ {
    type Error = String;
    fn try_from(s: String) -> Result<Self, String> {
        QmodZ::parse(&s)
    }
}

/// Vector over Q/Z.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QmodZVector(Vec<QmodZ>);

impl QmodZVector {
    pub fn zero(n: usize) -> Self {
        QmodZVector(vec![QmodZ::zero(); n])
    }

    pub fn from_entries(v: Vec<QmodZ>) -> Self {
        QmodZVector(v)
    }

    pub fn from_fractions(fr: &[(i64, i64)]) -> Self {
        QmodZVector(fr.iter().map(|&(n, d)| QmodZ::new(n, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> QmodZ {
        self.0[i].clone()
    }

    pub fn set(&mut self, i: usize, v: QmodZ) {
        self.0[i] = v;
    }

    pub fn entries(&self) -> &[QmodZ] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &QmodZVector) -> QmodZVector {
        assert_eq!(self.len(), other.len());
        QmodZVector(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &QmodZVector) -> QmodZVector {
        assert_eq!(self.len(), other.len());
        QmodZVector(self.0.iter().zip(&other.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn neg(&self) -> QmodZVector {
        QmodZVector(self.0.iter().map(|a| a.neg()).collect())
    }

    pub fn scale(&self, k: &Int) -> QmodZVector {
        QmodZVector(self.0.iter().map(|a| a.scale(k)).collect())
    }

    /// Row-vector action: self as a row times an integer matrix.
    pub fn apply_int_matrix_row(&self, a: &IntMatrix) -> QmodZVector {
        assert_eq!(self.len(), a.rows(), "shape mismatch");
        let mut out = QmodZVector::zero(a.cols());
        for j in 0..a.cols() {
            let mut acc = QmodZ::zero();
            for i in 0..a.rows() {
                acc = acc.add(&self.0[i].scale(a.get(i, j)));
            }
            out.set(j, acc);
        }
        out
    }

    /// Column-vector action: an integer matrix times self as a column.
    pub fn apply_int_matrix_col(&self, a: &IntMatrix) -> QmodZVector {
        assert_eq!(self.len(), a.cols(), "shape mismatch");
        let mut out = QmodZVector::zero(a.rows());
        for i in 0..a.rows() {
            let mut acc = QmodZ::zero();
            for j in 0..a.cols() {
                acc = acc.add(&self.0[j].scale(a.get(i, j)));
            }
            out.set(i, acc);
        }
        out
    }

    /// Least common denominator of the entries.
    pub fn common_denominator(&self) -> Int {
        self.0.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Debug for QmodZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl IntMatrix {
    pub fn apply_col_mod1(&self, v: &QmodZVector) -> QmodZVector {
        v.apply_int_matrix_col(self)
    }

    pub fn apply_row_mod1(&self, v: &QmodZVector) -> QmodZVector {
        v.apply_int_matrix_row(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_into_unit_interval() {
        assert_eq!(QmodZ::new(3, 2), QmodZ::new(1, 2));
        assert_eq!(QmodZ::new(-1, 2), QmodZ::new(1, 2));
        assert_eq!(QmodZ::new(-1, 3), QmodZ::new(2, 3));
        assert_eq!(QmodZ::new(4, 2), QmodZ::zero());
        assert_eq!(QmodZ::new(2, 4), QmodZ::new(1, 2));
        assert_eq!(QmodZ::new(6, -4), QmodZ::new(1, 2));
    }

    #[test]
    fn arithmetic() {
        let a = QmodZ::new(1, 2);
        let b = QmodZ::new(2, 3);
        assert_eq!(a.add(&b), QmodZ::new(1, 6));
        assert_eq!(a.sub(&b), QmodZ::new(5, 6));
        assert_eq!(a.add(&a), QmodZ::zero());
        assert_eq!(b.scale(&Int::from(3)), QmodZ::zero());
        assert_eq!(b.neg(), QmodZ::new(1, 3));
    }

    #[test]
    fn division_is_a_section_of_multiplication() {
        for (n, d) in [(1i64, 2i64), (2, 3), (0, 1), (3, 7)] {
            let v = QmodZ::new(n, d);
            for s in [1i64, 2, -3, 5, 12] {
                let u = v.div_by_int(&Int::from(s));
                assert_eq!(u.scale(&Int::from(s)), v);
            }
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["0", "1/2", "2/3", "5/7"] {
            let v = QmodZ::parse(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(QmodZ::parse("7/2").unwrap(), QmodZ::new(1, 2));
        assert_eq!(QmodZ::parse("-1/4").unwrap(), QmodZ::new(3, 4));
        assert_eq!(QmodZ::parse("3").unwrap(), QmodZ::zero());
        assert!(QmodZ::parse("1/0").is_err());
        assert!(QmodZ::parse("x").is_err());
    }

    #[test]
    fn vector_matrix_actions_match_transpose_duality() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![0, 3], vec![5, 1]]);
        let v = QmodZVector::from_fractions(&[(1, 2), (1, 3), (2, 5)]);
        assert_eq!(v.apply_int_matrix_row(&a), v.apply_int_matrix_col(&a.transpose()));
    }
}
