//! Parsers for group specs and subset specs.

use std::fmt;
use std::path::PathBuf;

use crate::group::{CocycleSource, FiniteGroup, GroupSpec, NormalSource, SubsetMask};

use super::CliError;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error(&self, expected: &str) -> CliError {
        let found = match self.rest().chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        CliError::Syntax {
            position: self.text[..self.pos].chars().count(),
            expected: expected.to_string(),
            found,
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("{c:?}")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, CliError> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.error("a name"));
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    fn number(&mut self) -> Result<u32, CliError> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("a number"));
        }
        let v = self.rest()[..len].parse().map_err(|_| self.error("a number below 2^32"))?;
        self.pos += len;
        Ok(v)
    }

    /// Text up to the next `,` or `)` outside brackets, trimmed.
    fn raw(&mut self, what: &str) -> Result<&'a str, CliError> {
        self.skip_ws();
        let mut depth = 0i32;
        let mut end = self.rest().len();
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' if depth == 0 => {
                    end = i;
                    break;
                }
                ')' | ']' => depth -= 1,
                ',' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        let s = self.rest()[..end].trim();
        if s.is_empty() {
            return Err(self.error(what));
        }
        self.pos += end;
        Ok(s)
    }

    fn finish(&mut self) -> Result<(), CliError> {
        if self.peek().is_some() {
            return Err(self.error("end of input"));
        }
        Ok(())
    }
}

fn spec(c: &mut Cursor) -> Result<GroupSpec, CliError> {
    let start = c.pos;
    let name = c.ident()?;
    c.expect('(')?;
    let out = match name {
        "Cyc" => GroupSpec::Cyclic(c.number()?),
        "Ab" => {
            let mut ds = vec![c.number()?];
            while c.peek() == Some(',') {
                c.expect(',')?;
                ds.push(c.number()?);
            }
            GroupSpec::Abelian(ds)
        }
        "Sym" => GroupSpec::Symmetric(c.number()?),
        "Alt" => GroupSpec::Alternating(c.number()?),
        "SL" | "Semidirect" => {
            let n = c.number()?;
            c.expect(',')?;
            let p = c.number()?;
            if name == "SL" {
                GroupSpec::SpecialLinear { n, p }
            } else {
                GroupSpec::Semidirect { n, p }
            }
        }
        "CocycleExt" => {
            let p = c.number()?;
            c.expect(',')?;
            let base = spec(c)?;
            c.expect(',')?;
            let path = c.raw("a cocycle file path")?;
            GroupSpec::CocycleExt {
                p,
                base: Box::new(base),
                cocycle: CocycleSource::File(PathBuf::from(path)),
            }
        }
        "Quotient" => {
            let parent = spec(c)?;
            c.expect(',')?;
            let normal = match c.raw("a subset file, `center` or `derived`")? {
                "center" => NormalSource::Center,
                "derived" => NormalSource::Derived,
                path => NormalSource::File(PathBuf::from(path)),
            };
            GroupSpec::quotient(parent, normal)
        }
        "Product" => {
            let a = spec(c)?;
            c.expect(',')?;
            let b = spec(c)?;
            GroupSpec::product(a, b)
        }
        _ => {
            c.pos = start;
            return Err(c.error("one of Cyc, Ab, Sym, Alt, SL, Semidirect, CocycleExt, Quotient, Product"));
        }
    };
    c.expect(')')?;
    Ok(out)
}

/// Parses `Cyc(k)`, `Ab(d1,...)`, `Sym(n)`, `Alt(n)`, `SL(n,p)`,
/// `Semidirect(n,p)`, `CocycleExt(p,<spec>,<file>)`,
/// `Quotient(<spec>,<file>|center|derived)` and `Product(<spec>,<spec>)`,
/// then validates the parameters.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, CliError> {
    let mut c = Cursor::new(text);
    let s = spec(&mut c)?;
    c.finish()?;
    s.validate()?;
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetSpec {
    /// Conjugacy class of an element.
    Class(String),
    /// Radius-r ball for the symmetric closure of the generators.
    Ball(Vec<String>, usize),
    /// `{−k, …, k}` in a cyclic group.
    Arc(u32),
    File(PathBuf),
    Elements(Vec<String>),
    Sym(Box<SubsetSpec>),
    Union(Vec<SubsetSpec>),
    All,
    Identity,
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetSpec::Class(x) => write!(f, "class({x})"),
            SubsetSpec::Ball(gens, r) => write!(f, "ball({},{r})", gens.join(";")),
            SubsetSpec::Arc(k) => write!(f, "arc({k})"),
            SubsetSpec::File(p) => write!(f, "file({})", p.display()),
            SubsetSpec::Elements(xs) => write!(f, "elems({})", xs.join(";")),
            SubsetSpec::Sym(s) => write!(f, "sym({s})"),
            SubsetSpec::Union(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "union({})", inner.join(","))
            }
            SubsetSpec::All => f.write_str("all"),
            SubsetSpec::Identity => f.write_str("e"),
        }
    }
}

/// Body of `name(...)` up to the matching parenthesis.
fn balanced<'a>(c: &mut Cursor<'a>) -> Result<&'a str, CliError> {
    c.expect('(')?;
    let mut depth = 0i32;
    for (i, ch) in c.rest().char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' if depth > 0 => depth -= 1,
            ')' => {
                let body = &c.rest()[..i];
                c.pos += i + 1;
                return Ok(body);
            }
            _ => {}
        }
    }
    c.pos = c.text.len();
    Err(c.error("')'"))
}

fn split_items(body: &str, sep: char) -> Vec<String> {
    crate::group::split_top_level(body, sep).into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn subset(c: &mut Cursor) -> Result<SubsetSpec, CliError> {
    let start = c.pos;
    let name = c.ident()?;
    match name {
        "all" => return Ok(SubsetSpec::All),
        "e" => return Ok(SubsetSpec::Identity),
        _ => {}
    }
    let body_start = c.pos;
    let out = match name {
        "class" => {
            let body = balanced(c)?.trim();
            if body.is_empty() {
                c.pos = body_start;
                return Err(c.error("an element"));
            }
            SubsetSpec::Class(body.to_string())
        }
        "ball" => {
            let body = balanced(c)?;
            let parts = crate::group::split_top_level(body, ',');
            let radius = parts.last().and_then(|r| r.trim().parse().ok()).filter(|_| parts.len() > 1);
            let Some(r) = radius else {
                c.pos = body_start;
                return Err(c.error("ball(<gens>,<radius>)"));
            };
            SubsetSpec::Ball(split_items(&parts[..parts.len() - 1].join(","), ';'), r)
        }
        "arc" => {
            c.expect('(')?;
            let k = c.number()?;
            c.expect(')')?;
            SubsetSpec::Arc(k)
        }
        "file" => {
            let body = balanced(c)?.trim();
            SubsetSpec::File(PathBuf::from(body))
        }
        "elems" => SubsetSpec::Elements(split_items(balanced(c)?, ';')),
        "sym" => {
            c.expect('(')?;
            let inner = subset(c)?;
            c.expect(')')?;
            SubsetSpec::Sym(Box::new(inner))
        }
        "union" => {
            c.expect('(')?;
            let mut parts = vec![subset(c)?];
            while c.peek() == Some(',') {
                c.expect(',')?;
                parts.push(subset(c)?);
            }
            c.expect(')')?;
            SubsetSpec::Union(parts)
        }
        _ => {
            c.pos = start;
            return Err(c.error("one of class, ball, arc, file, elems, sym, union, all, e"));
        }
    };
    Ok(out)
}

pub fn parse_subset_spec(text: &str) -> Result<SubsetSpec, CliError> {
    let mut c = Cursor::new(text);
    let s = subset(&mut c)?;
    c.finish()?;
    Ok(s)
}

/// Evaluates a subset spec in a built group.
pub fn resolve_subset(g: &FiniteGroup, spec: &SubsetSpec) -> Result<SubsetMask, CliError> {
    Ok(match spec {
        SubsetSpec::Class(x) => {
            let x = g.parse_element(x)?;
            let classes = g.classes();
            classes.class_mask(g, classes.class_of(x))
        }
        SubsetSpec::Ball(gens, r) => {
            let mut s = SubsetMask::empty(g);
            for x in gens {
                s.insert(g.parse_element(x)?);
            }
            let s = g.symmetrize(&s);
            g.ball(&s, *r)?
        }
        SubsetSpec::Arc(k) => {
            let GroupSpec::Cyclic(order) = g.spec() else {
                return Err(CliError::Input("arc(k) needs a cyclic group".into()));
            };
            let k = (*k).min(*order);
            let mut s = SubsetMask::empty(g);
            for d in 0..=k as i64 {
                for v in [d, -d] {
                    s.insert(g.parse_element(&v.to_string())?);
                }
            }
            s
        }
        SubsetSpec::File(path) => g.read_subset_file(path)?,
        SubsetSpec::Elements(xs) => {
            let mut s = SubsetMask::empty(g);
            for x in xs {
                s.insert(g.parse_element(x)?);
            }
            s
        }
        SubsetSpec::Sym(inner) => g.symmetrize(&resolve_subset(g, inner)?),
        SubsetSpec::Union(parts) => {
            let mut s = SubsetMask::empty(g);
            for p in parts {
                s.union_with(&resolve_subset(g, p)?);
            }
            s
        }
        SubsetSpec::All => SubsetMask::full(g),
        SubsetSpec::Identity => SubsetMask::singleton(g, g.identity()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupError};

    #[test]
    fn group_specs() {
        assert_eq!(parse_group_spec("SL(2,5)").unwrap(), GroupSpec::SpecialLinear { n: 2, p: 5 });
        assert_eq!(parse_group_spec(" Alt( 7 ) ").unwrap(), GroupSpec::Alternating(7));
        assert_eq!(parse_group_spec("Ab(2,3,4)").unwrap(), GroupSpec::Abelian(vec![2, 3, 4]));
        assert!(matches!(
            parse_group_spec("SL(2,4)"),
            Err(CliError::Group(GroupError::InvalidParameters(_)))
        ));
        let q = parse_group_spec("Quotient(SL(2,5),center)").unwrap();
        assert_eq!(q, GroupSpec::quotient(GroupSpec::SpecialLinear { n: 2, p: 5 }, NormalSource::Center));
        let e = parse_group_spec("CocycleExt(2,Cyc(2),data/h.txt)").unwrap();
        assert_eq!(e.to_string(), "CocycleExt(2,Cyc(2),data/h.txt)");
        let p = parse_group_spec("Product(Alt(5),Sym(3))").unwrap();
        assert_eq!(parse_group_spec(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn syntax_positions() {
        let err = parse_group_spec("SL(2;5)").unwrap_err();
        assert_eq!(
            err,
            CliError::Syntax {
                position: 4,
                expected: "','".into(),
                found: "';'".into()
            }
        );
        match parse_group_spec("Foo(3)").unwrap_err() {
            CliError::Syntax { position, .. } => assert_eq!(position, 0),
            e => panic!("{e:?}"),
        }
        match parse_group_spec("Cyc(5) x").unwrap_err() {
            CliError::Syntax { position, expected, .. } => {
                assert_eq!(position, 7);
                assert_eq!(expected, "end of input");
            }
            e => panic!("{e:?}"),
        }
        match parse_group_spec("Cyc(").unwrap_err() {
            CliError::Syntax { position, found, .. } => assert_eq!((position, found.as_str()), (4, "end of input")),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn subset_specs() {
        let g = build_group(&GroupSpec::Cyclic(12)).unwrap();
        let arc = resolve_subset(&g, &parse_subset_spec("arc(1)").unwrap()).unwrap();
        let names: Vec<String> = arc.iter().map(|x| g.format(x)).collect();
        assert_eq!(arc.count(), 3);
        assert!(names.contains(&"11".to_string()));

        let s3 = build_group(&GroupSpec::Symmetric(3)).unwrap();
        let cls = resolve_subset(&s3, &parse_subset_spec("class((1,2))").unwrap()).unwrap();
        assert_eq!(cls.count(), 3);
        let u = resolve_subset(&s3, &parse_subset_spec("union(e, class((1,2,3)))").unwrap()).unwrap();
        assert_eq!(u.count(), 3);
        let b = resolve_subset(&s3, &parse_subset_spec("ball((1,2);(1,2,3),1)").unwrap()).unwrap();
        assert_eq!(b.count(), 4);
        let sy = resolve_subset(&s3, &parse_subset_spec("sym(elems((1,2,3)))").unwrap()).unwrap();
        assert_eq!(sy.count(), 2);
        assert!(resolve_subset(&s3, &parse_subset_spec("arc(1)").unwrap()).is_err());
    }

    #[test]
    fn subset_round_trip() {
        for text in ["class((1,2,3))", "ball((1,2);(2,3),2)", "arc(3)", "union(e,sym(elems(1;2)),all)", "file(x.txt)"] {
            let s = parse_subset_spec(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(parse_subset_spec(&s.to_string()).unwrap(), s);
        }
        match parse_subset_spec("union(e,").unwrap_err() {
            CliError::Syntax { position, .. } => assert_eq!(position, 8),
            e => panic!("{e:?}"),
        }
    }
}
