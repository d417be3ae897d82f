//! Bracket lists such as `[[207/2,-3/2],[3/2,-207/2]]`.
//!
//! Entries may also be quoted (`["5/2","-3/2"]`), so JSON arrays of rational
//! strings are accepted too.

use kmult::algebra::parse_rational;
use kmult::blattner::{HcParamG, HcParamK};
use kmult::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Atom(Rational),
    List(Vec<Node>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub token: String,
    /// 1-based character position, or one past the end for a missing token.
    pub position: usize,
    pub expected: &'static str,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unexpected {} at position {}, expected {}", self.token, self.position, self.expected)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Comma,
    Number(String),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = k + 1;
        match c {
            '[' => out.push((Tok::Open, pos)),
            ']' => out.push((Tok::Close, pos)),
            ',' => out.push((Tok::Comma, pos)),
            c if c.is_whitespace() || c == '"' => {}
            c if c.is_ascii_digit() || c == '-' || c == '+' || c == '/' => {
                let start = k;
                while k + 1 < chars.len() && (chars[k + 1].is_ascii_digit() || chars[k + 1] == '/') {
                    k += 1;
                }
                out.push((Tok::Number(chars[start..=k].iter().collect()), pos));
            }
            other => {
                return Err(ParseError { token: format!("'{other}'"), position: pos, expected: "'[', ']', ',' or a number" })
            }
        }
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn error(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.at) {
            Some((t, pos)) => {
                let token = match t {
                    Tok::Open => "'['".to_string(),
                    Tok::Close => "']'".to_string(),
                    Tok::Comma => "','".to_string(),
                    Tok::Number(s) => format!("'{s}'"),
                };
                ParseError { token, position: *pos, expected }
            }
            None => ParseError { token: "end of input".into(), position: self.end, expected },
        }
    }

    fn node(&mut self) -> Result<Node, ParseError> {
        match self.toks.get(self.at).cloned() {
            Some((Tok::Open, _)) => {
                self.at += 1;
                let mut items = Vec::new();
                if matches!(self.toks.get(self.at), Some((Tok::Close, _))) {
                    self.at += 1;
                    return Ok(Node::List(items));
                }
                loop {
                    items.push(self.node()?);
                    match self.toks.get(self.at) {
                        Some((Tok::Comma, _)) => self.at += 1,
                        Some((Tok::Close, _)) => {
                            self.at += 1;
                            return Ok(Node::List(items));
                        }
                        _ => return Err(self.error("',' or ']'")),
                    }
                }
            }
            Some((Tok::Number(s), pos)) => {
                let r = parse_rational(&s)
                    .map_err(|_| ParseError { token: format!("'{s}'"), position: pos, expected: "a rational such as -7/2" })?;
                self.at += 1;
                Ok(Node::Atom(r))
            }
            _ => Err(self.error("'[' or a number")),
        }
    }
}

pub fn parse(s: &str) -> Result<Node, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, at: 0, end: s.chars().count() + 1 };
    let node = p.node()?;
    if p.at < p.toks.len() {
        return Err(p.error("end of input"));
    }
    Ok(node)
}

/// A flat list of rationals.
pub fn vector(s: &str) -> Result<Vec<Rational>, String> {
    match parse(s).map_err(|e| e.to_string())? {
        Node::List(items) => items
            .into_iter()
            .map(|n| match n {
                Node::Atom(r) => Ok(r),
                Node::List(_) => Err("expected a flat list of numbers".to_string()),
            })
            .collect(),
        Node::Atom(_) => Err("expected a list such as [1,0,-1]".to_string()),
    }
}

/// Two lists `[[..],[..]]`.
pub fn blocks(s: &str) -> Result<(Vec<Rational>, Vec<Rational>), String> {
    let wrong = || "expected two blocks such as [[5/2,-3/2],[3/2,-5/2]]".to_string();
    let Node::List(items) = parse(s).map_err(|e| e.to_string())? else { return Err(wrong()) };
    let [a, b]: [Node; 2] = items.try_into().map_err(|_| wrong())?;
    let flat = |n: Node| match n {
        Node::List(xs) => xs
            .into_iter()
            .map(|x| match x {
                Node::Atom(r) => Ok(r),
                Node::List(_) => Err(wrong()),
            })
            .collect::<Result<Vec<_>, _>>(),
        Node::Atom(_) => Err(wrong()),
    };
    Ok((flat(a)?, flat(b)?))
}

pub fn g_param(s: &str) -> Result<HcParamG, String> {
    blocks(s).map(|(a, b)| HcParamG::new(a, b))
}

pub fn k_param(s: &str) -> Result<HcParamK, String> {
    blocks(s).map(|(a, b)| HcParamK::new(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use kmult::algebra::{frac, rat};

    #[test]
    fn nested_lists() {
        let (a, b) = blocks("[[207/2,-3/2],[3/2,-207/2]]").unwrap();
        assert_eq!(a, vec![frac(207, 2), frac(-3, 2)]);
        assert_eq!(b, vec![frac(3, 2), frac(-207, 2)]);
        assert_eq!(vector(r#"["1", "-1", 0]"#).unwrap(), vec![rat(1), rat(-1), rat(0)]);
        assert_eq!(vector("[]").unwrap(), vec![]);
    }

    #[test]
    fn errors_name_token_and_position() {
        let e = parse("[[1,2],x]").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("'x'", 8));
        let e = parse("[1 2]").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("'2'", 4));
        let e = parse("[1,2").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("end of input", 5));
        let e = parse("[1/0]").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse("[1]]").unwrap_err();
        assert_eq!((e.token.as_str(), e.position), ("']'", 4));
    }
}
