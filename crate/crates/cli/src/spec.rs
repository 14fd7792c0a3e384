//! Text forms of groups and pairs.
//!
//! ```text
//! spec := atom | spec "x" atom
//! atom := "Z" int | "S" int | "D" int | "(" spec ")"
//! pair := "wr(" spec "," int ")"
//! ```
//!
//! Whitespace between tokens is ignored and `x` associates to the left, so
//! the canonical rendering only parenthesizes a product on the right.

use std::fmt;
use std::str::FromStr;

use gelfand_core::{
    direct_product, embed_wreath_subgroup_with_budget, make_cyclic, make_dihedral, make_symmetric,
    FiniteGroup, GroupError, SubgroupEmbedding,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpecAst {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Product(Box<GroupSpecAst>, Box<GroupSpecAst>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {expected}, found {found}")]
pub struct SpecError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
}

impl GroupSpecAst {
    pub fn product(left: GroupSpecAst, right: GroupSpecAst) -> Self {
        GroupSpecAst::Product(Box::new(left), Box::new(right))
    }

    /// Canonical text; `parse_group_spec(&ast.render()) == Ok(ast)`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupSpecAst::Cyclic(k) => Some(*k as u128),
            GroupSpecAst::Symmetric(n) => gelfand_core::group::factorial(*n),
            GroupSpecAst::Dihedral(k) => (*k as u128).checked_mul(2),
            GroupSpecAst::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }

    /// Builds the group, refusing anything whose order exceeds `budget`
    /// before allocating.
    pub fn build(&self, budget: usize) -> Result<FiniteGroup, GroupError> {
        let required = self.order().unwrap_or(u128::MAX);
        if required > budget as u128 {
            return Err(GroupError::ResourceLimit {
                what: self.render(),
                required,
                budget,
            });
        }
        match self {
            GroupSpecAst::Cyclic(k) => make_cyclic(*k),
            GroupSpecAst::Symmetric(n) => make_symmetric(*n),
            GroupSpecAst::Dihedral(k) => make_dihedral(*k),
            GroupSpecAst::Product(a, b) => direct_product(&a.build(budget)?, &b.build(budget)?),
        }
    }
}

impl fmt::Display for GroupSpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpecAst::Cyclic(k) => write!(f, "Z{k}"),
            GroupSpecAst::Symmetric(n) => write!(f, "S{n}"),
            GroupSpecAst::Dihedral(k) => write!(f, "D{k}"),
            GroupSpecAst::Product(a, b) => match **b {
                GroupSpecAst::Product(..) => write!(f, "{a}x({b})"),
                _ => write!(f, "{a}x{b}"),
            },
        }
    }
}

impl FromStr for GroupSpecAst {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<Self, SpecError> {
        parse_group_spec(s)
    }
}

/// `(G ≀ S_n, G ≀ S_{n-1})` described by its base group and `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairSpec {
    pub base: GroupSpecAst,
    pub n: usize,
}

impl PairSpec {
    pub fn new(base: GroupSpecAst, n: usize) -> Self {
        PairSpec { base, n }
    }

    /// `|G|^n · n!`, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        let base = self.base.order()?;
        base.checked_pow(u32::try_from(self.n).ok()?)?
            .checked_mul(gelfand_core::group::factorial(self.n)?)
    }

    /// Constructs the base group and the embedding `K -> G`.
    pub fn build(&self, budget: usize) -> Result<(FiniteGroup, SubgroupEmbedding), GroupError> {
        let base = self.base.build(budget)?;
        let k = embed_wreath_subgroup_with_budget(&base, self.n, budget)?;
        Ok((base, k))
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wr({},{})", self.base, self.n)
    }
}

impl FromStr for PairSpec {
    type Err = SpecError;
    fn from_str(s: &str) -> Result<Self, SpecError> {
        parse_pair_spec(s)
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpecAst, SpecError> {
    let mut p = Parser { text, pos: 0 };
    let ast = p.spec()?;
    p.finish()?;
    Ok(ast)
}

pub fn parse_pair_spec(text: &str) -> Result<PairSpec, SpecError> {
    let mut p = Parser { text, pos: 0 };
    p.keyword("wr")?;
    p.symbol('(')?;
    let base = p.spec()?;
    p.symbol(',')?;
    let n = p.integer()?;
    p.symbol(')')?;
    p.finish()?;
    Ok(PairSpec { base, n })
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn error<T>(&self, expected: &str) -> Result<T, SpecError> {
        let found = match self.peek_raw() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        Err(SpecError {
            offset: self.pos,
            expected: expected.to_string(),
            found,
        })
    }

    fn symbol(&mut self, c: char) -> Result<(), SpecError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.error(&format!("'{c}'"))
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), SpecError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(word) {
            self.pos += word.len();
            Ok(())
        } else {
            self.error(&format!("'{word}'"))
        }
    }

    fn finish(&mut self) -> Result<(), SpecError> {
        if self.peek().is_some() {
            return self.error("end of input");
        }
        Ok(())
    }

    fn spec(&mut self) -> Result<GroupSpecAst, SpecError> {
        let mut left = self.atom()?;
        while self.peek() == Some('x') {
            self.pos += 1;
            let right = self.atom()?;
            left = GroupSpecAst::product(left, right);
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<GroupSpecAst, SpecError> {
        const EXPECTED: &str = "'Z', 'S', 'D' or '('";
        let ctor: fn(usize) -> GroupSpecAst = match self.peek() {
            Some('Z') => GroupSpecAst::Cyclic,
            Some('S') => GroupSpecAst::Symmetric,
            Some('D') => GroupSpecAst::Dihedral,
            Some('(') => {
                self.pos += 1;
                let inner = self.spec()?;
                self.symbol(')')?;
                return Ok(inner);
            }
            _ => return self.error(EXPECTED),
        };
        self.pos += 1;
        Ok(ctor(self.integer()?))
    }

    fn integer(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.text[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return self.error("a decimal integer");
        }
        self.pos += digits;
        self.text[start..self.pos].parse().map_err(|_| SpecError {
            offset: start,
            expected: "an integer that fits in usize".to_string(),
            found: format!("'{}'", &self.text[start..self.pos]),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupSpecAst::*;

    fn z(k: usize) -> GroupSpecAst {
        Cyclic(k)
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_group_spec("Z3").unwrap(), z(3));
        assert_eq!(
            parse_group_spec("Z2xZ2").unwrap(),
            GroupSpecAst::product(z(2), z(2))
        );
        assert_eq!(
            parse_group_spec("Z2 x S3").unwrap(),
            GroupSpecAst::product(z(2), Symmetric(3))
        );
        assert_eq!(parse_group_spec(" ( D4 ) ").unwrap(), Dihedral(4));
    }

    #[test]
    fn product_is_left_associative() {
        let left = GroupSpecAst::product(GroupSpecAst::product(z(2), z(3)), z(4));
        assert_eq!(parse_group_spec("Z2xZ3xZ4").unwrap(), left);
        assert_eq!(left.render(), "Z2xZ3xZ4");
        let right = GroupSpecAst::product(z(2), GroupSpecAst::product(z(3), z(4)));
        assert_eq!(parse_group_spec("Z2x(Z3xZ4)").unwrap(), right);
        assert_eq!(right.render(), "Z2x(Z3xZ4)");
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_group_spec("Z2xQ8").unwrap_err();
        assert_eq!(e.offset, 3);
        assert!(e.expected.contains("'Z'"));
        assert_eq!(e.found, "'Q'");

        let e = parse_group_spec("Z").unwrap_err();
        assert_eq!((e.offset, e.found.as_str()), (1, "end of input"));

        let e = parse_group_spec("(Z2xS3").unwrap_err();
        assert_eq!((e.offset, e.expected.as_str()), (6, "')'"));

        let e = parse_group_spec("Z2 Z3").unwrap_err();
        assert_eq!((e.offset, e.expected.as_str()), (3, "end of input"));

        let e = parse_group_spec("Z99999999999999999999999").unwrap_err();
        assert_eq!(e.offset, 1);
        assert!(parse_group_spec("").is_err());
    }

    #[test]
    fn pair_specs() {
        let p = parse_pair_spec("wr( S3 , 2 )").unwrap();
        assert_eq!(p, PairSpec::new(Symmetric(3), 2));
        assert_eq!(p.to_string(), "wr(S3,2)");
        assert_eq!(p.order(), Some(72));
        let p: PairSpec = "wr(Z2xZ2,2)".parse().unwrap();
        assert_eq!(p.order(), Some(32));
        assert!(parse_pair_spec("wr(S3)").is_err());
        assert!(parse_pair_spec("S3,2").is_err());
    }

    #[test]
    fn build_matches_order_and_descriptor() {
        for text in ["Z6", "S4", "D5", "Z2xS3", "Z2x(Z2xZ2)", "Z2xZ2xZ2"] {
            let ast = parse_group_spec(text).unwrap();
            let g = ast.build(1000).unwrap();
            assert_eq!(g.order() as u128, ast.order().unwrap());
            assert_eq!(g.descriptor(), ast.render());
        }
        assert!(matches!(
            parse_group_spec("S12").unwrap().build(1000),
            Err(GroupError::ResourceLimit {
                required: 479001600,
                ..
            })
        ));
        assert!(parse_group_spec("Z0").unwrap().build(1000).is_err());
    }

    #[test]
    fn pair_build() {
        let (base, k) = parse_pair_spec("wr(Z2,3)").unwrap().build(1000).unwrap();
        assert_eq!(base.order(), 2);
        assert_eq!((k.parent().order(), k.order()), (48, 8));
        assert!(matches!(
            parse_pair_spec("wr(S3,3)").unwrap().build(1000),
            Err(GroupError::ResourceLimit { .. })
        ));
        assert!(matches!(
            parse_pair_spec("wr(Z2,1)").unwrap().build(1000),
            Err(GroupError::InvalidParameter(_))
        ));
    }

    fn arb_ast() -> impl proptest::strategy::Strategy<Value = GroupSpecAst> {
        use proptest::prelude::*;
        let leaf = prop_oneof![
            (0usize..50).prop_map(Cyclic),
            (0usize..50).prop_map(Symmetric),
            (0usize..50).prop_map(Dihedral),
        ];
        leaf.prop_recursive(4, 16, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| GroupSpecAst::product(a, b))
        })
    }

    proptest::proptest! {
        #[test]
        fn parse_inverts_render(ast in arb_ast()) {
            proptest::prop_assert_eq!(parse_group_spec(&ast.render()).unwrap(), ast);
        }

        #[test]
        fn render_is_canonical(ast in arb_ast(), pad in "[ \t]{0,2}") {
            let spaced = ast.render().replace('x', &format!("{pad}x{pad}"));
            let once = parse_group_spec(&spaced).unwrap().render();
            proptest::prop_assert_eq!(&once, &ast.render());
            proptest::prop_assert_eq!(parse_group_spec(&once).unwrap().render(), once);
        }
    }
}
