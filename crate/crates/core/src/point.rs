//! Point identifiers.
//!
//! Atoms come from fixture files; tuples are produced by constructions
//! (fibered products, action groupoids, germs). The textual form of a tuple
//! is `(a,b,c)`, which the parser reads back, so constructed spaces
//! serialize and reload without loss.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Atom(Arc<str>),
    Tuple(Arc<[Point]>),
}

impl Point {
    /// Panics on an id that the parser would reject; use [`Point::parse`] for input.
    pub fn atom(id: &str) -> Point {
        assert!(valid_atom(id), "invalid atom id {id:?}");
        Point::Atom(Arc::from(id))
    }

    pub fn tuple<I: IntoIterator<Item = Point>>(items: I) -> Point {
        Point::Tuple(items.into_iter().collect::<Vec<_>>().into())
    }

    pub fn pair(a: Point, b: Point) -> Point {
        Point::tuple([a, b])
    }

    pub fn triple(a: Point, b: Point, c: Point) -> Point {
        Point::tuple([a, b, c])
    }

    pub fn components(&self) -> Option<&[Point]> {
        match self {
            Point::Atom(_) => None,
            Point::Tuple(items) => Some(items),
        }
    }

    pub fn parse(text: &str) -> Result<Point> {
        let mut parser = Parser { text, pos: 0 };
        let point = parser.point()?;
        if parser.pos != text.len() {
            return Err(Error::Parse(format!("trailing input in point id {text:?}")));
        }
        Ok(point)
    }
}

fn valid_atom(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c == '(' || c == ')' || c == ',' || c.is_whitespace())
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn point(&mut self) -> Result<Point> {
        let rest = &self.text[self.pos..];
        if let Some(stripped) = rest.strip_prefix('(') {
            self.pos += 1;
            let mut items = Vec::new();
            if stripped.starts_with(')') {
                self.pos += 1;
                return Ok(Point::tuple(items));
            }
            loop {
                items.push(self.point()?);
                match self.text[self.pos..].chars().next() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        return Ok(Point::tuple(items));
                    }
                    _ => return Err(Error::Parse(format!("unbalanced point id {:?}", self.text))),
                }
            }
        }
        let end = rest.find(['(', ')', ',']).unwrap_or(rest.len());
        let id = &rest[..end];
        if !valid_atom(id) {
            return Err(Error::Parse(format!("invalid point id {:?}", self.text)));
        }
        self.pos += end;
        Ok(Point::Atom(Arc::from(id)))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Atom(id) => f.write_str(id),
            Point::Tuple(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<&str> for Point {
    fn from(id: &str) -> Point {
        Point::parse(id).unwrap_or_else(|e| panic!("{e}"))
    }
}
