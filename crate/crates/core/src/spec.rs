//! The group spec mini-language.
//!
//! ```text
//! spec   := factor ('x' factor)*
//! factor := 'C' n | 'D' order | 'Q8' | 'SD' order | 'S' n | 'Ab(' p ':[' a (',' a)* '])'
//! ```
//!
//! Products associate to the left and use the pair indexing of
//! [`Group::direct_product`], so `Ab(2:[1])xAb(2:[2])` and `Ab(2:[1,2])` build
//! the same table.

use std::fmt;
use std::str::FromStr;

use crate::arith::factorize;
use crate::group::Group;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion,
    Semidihedral(usize),
    Symmetric(usize),
    Abelian { prime: u64, exponents: Vec<u32> },
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut parser = Parser { text: text.as_bytes(), pos: 0 };
        let spec = parser.spec()?;
        if parser.pos != text.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(spec)
    }

    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Cyclic(n) => Group::cyclic(*n),
            GroupSpec::Dihedral(n) => Group::dihedral(*n),
            GroupSpec::Quaternion => Group::quaternion(),
            GroupSpec::Semidihedral(n) => Group::semidihedral(*n),
            GroupSpec::Symmetric(n) => Group::symmetric(*n),
            GroupSpec::Abelian { prime, exponents } => {
                let factors: Vec<(u64, u32)> = exponents.iter().map(|&a| (*prime, a)).collect();
                Group::abelian(&factors)
            }
            GroupSpec::Product(parts) => {
                let mut iter = parts.iter();
                let first = iter.next().ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
                let mut acc = first.build()?;
                for part in iter {
                    acc = Group::direct_product(&acc, &part.build()?)?;
                }
                Ok(acc)
            }
        }
    }

    /// The prime-power cyclic factors, in table order, when every factor is
    /// `Ab(..)` or a cyclic group of prime-power order (`C1` contributes none).
    pub fn abelian_factors(&self) -> Option<Vec<(u64, u32)>> {
        match self {
            GroupSpec::Cyclic(1) => Some(Vec::new()),
            GroupSpec::Cyclic(n) => match factorize(*n as u64).as_slice() {
                [(p, a)] => Some(vec![(*p, *a)]),
                _ => None,
            },
            GroupSpec::Abelian { prime, exponents } => Some(exponents.iter().map(|&a| (*prime, a)).collect()),
            GroupSpec::Product(parts) => {
                let mut out = Vec::new();
                for part in parts {
                    out.extend(part.abelian_factors()?);
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// The top-level factors of a product (a single-element slice otherwise).
    pub fn factors(&self) -> &[GroupSpec] {
        match self {
            GroupSpec::Product(parts) => parts,
            other => std::slice::from_ref(other),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Semidihedral(n) => write!(f, "SD{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Abelian { prime, exponents } => {
                let list: Vec<String> = exponents.iter().map(u32::to_string).collect();
                write!(f, "Ab({prime}:[{}])", list.join(","))
            }
            GroupSpec::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.text[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{s}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                position: start,
                message: "number too large".into(),
            })
    }

    fn size(&mut self) -> Result<usize> {
        let start = self.pos;
        usize::try_from(self.number()?).map_err(|_| Error::Parse {
            position: start,
            message: "number too large".into(),
        })
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let mut parts = vec![self.factor()?];
        while self.eat("x") {
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            GroupSpec::Product(parts)
        })
    }

    fn factor(&mut self) -> Result<GroupSpec> {
        if self.eat("Ab(") {
            let prime = self.number()?;
            self.expect(":[")?;
            let mut exponents = Vec::new();
            loop {
                let start = self.pos;
                let a = u32::try_from(self.number()?).map_err(|_| Error::Parse {
                    position: start,
                    message: "exponent too large".into(),
                })?;
                exponents.push(a);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("])")?;
            Ok(GroupSpec::Abelian { prime, exponents })
        } else if self.eat("Q8") {
            Ok(GroupSpec::Quaternion)
        } else if self.eat("SD") {
            Ok(GroupSpec::Semidihedral(self.size()?))
        } else if self.eat("S") {
            Ok(GroupSpec::Symmetric(self.size()?))
        } else if self.eat("C") {
            Ok(GroupSpec::Cyclic(self.size()?))
        } else if self.eat("D") {
            Ok(GroupSpec::Dihedral(self.size()?))
        } else {
            Err(self.error("expected one of C, D, Q8, SD, S, Ab("))
        }
    }
}

/// Parses and builds in one step.
pub fn build_group(text: &str) -> Result<Group> {
    GroupSpec::parse(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar() {
        assert_eq!(GroupSpec::parse("C6").unwrap(), GroupSpec::Cyclic(6));
        assert_eq!(GroupSpec::parse("SD16").unwrap(), GroupSpec::Semidihedral(16));
        assert_eq!(
            GroupSpec::parse("D6xD10").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Dihedral(6), GroupSpec::Dihedral(10)])
        );
        assert_eq!(
            GroupSpec::parse("Ab(2:[1,2])").unwrap(),
            GroupSpec::Abelian { prime: 2, exponents: vec![1, 2] }
        );
        for text in ["C1", "Q8xC2xC2", "S5", "Ab(3:[1])xQ8", "D6xD10"] {
            assert_eq!(GroupSpec::parse(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn reports_error_positions() {
        assert_eq!(
            GroupSpec::parse("D6xZ4").unwrap_err(),
            Error::Parse { position: 3, message: "expected one of C, D, Q8, SD, S, Ab(".into() }
        );
        assert!(matches!(GroupSpec::parse("Ab(2:[1,])"), Err(Error::Parse { position: 8, .. })));
        assert!(matches!(GroupSpec::parse("C"), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(GroupSpec::parse("C4 "), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(GroupSpec::parse(""), Err(Error::Parse { position: 0, .. })));
    }

    #[test]
    fn builds_and_labels() {
        let g = build_group("D6xD10").unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(g.label(), "D6xD10");
        let split = build_group("Ab(2:[1])xAb(2:[2])").unwrap();
        assert_eq!(split, build_group("Ab(2:[1,2])").unwrap());
        assert_eq!(build_group("C4xC9").unwrap(), Group::abelian(&[(2, 2), (3, 2)]).unwrap());
        assert!(matches!(build_group("C201"), Err(Error::CapExceeded { .. })));
        assert_eq!(
            GroupSpec::parse("C4xAb(3:[1,2])xC1").unwrap().abelian_factors(),
            Some(vec![(2, 2), (3, 1), (3, 2)])
        );
        assert_eq!(GroupSpec::parse("C6").unwrap().abelian_factors(), None);
    }
}
