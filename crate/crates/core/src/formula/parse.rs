//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! imp   := or ('->' imp)?
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := ('~' | '[]' | '<>') unary | atom
//! atom  := letter | 'true' | 'false' | '(' imp ')' | 'nabla' '{' [imp (',' imp)*] '}'
//! ```
//!
//! The Unicode spellings `¬ ∧ ∨ → □ ◇ ⊤ ⊥ ∇` are accepted as aliases.

use super::Formula;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Nabla,
    Not,
    And,
    Or,
    Imp,
    Box,
    Dia,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("letter `{s}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Nabla => "`nabla`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::Box => "`[]`".into(),
            Tok::Dia => "`<>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const OPERAND_START: &[&str] = &["letter", "true", "false", "~", "[]", "<>", "(", "nabla"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if c.is_ascii_lowercase() {
            let end = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            let word = &rest[..end];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                "nabla" => Tok::Nabla,
                _ => Tok::Ident(word.to_string()),
            };
            (tok, end)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("[]") {
            (Tok::Box, 2)
        } else if rest.starts_with("<>") {
            (Tok::Dia, 2)
        } else {
            let tok = match c {
                '~' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '→' => Tok::Imp,
                '□' => Tok::Box,
                '◇' | '◊' => Tok::Dia,
                '⊤' => Tok::True,
                '⊥' => Tok::False,
                '∇' => Tok::Nabla,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                _ => {
                    return Err(Error::Parse {
                        offset: i,
                        expected: OPERAND_START.iter().map(|s| s.to_string()).collect(),
                        found: format!("character {c:?}"),
                    })
                }
            };
            (tok, c.len_utf8())
        };
        out.push((i, tok));
        for _ in rest[..len].chars() {
            chars.next();
        }
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let (offset, tok) = &self.toks[self.pos];
        Err(Error::Parse {
            offset: *offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.describe(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.unary()?))
            }
            Tok::Dia => {
                self.bump();
                Ok(Formula::diamond(self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::prop(&name))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::top())
            }
            Tok::False => {
                self.bump();
                Ok(Formula::bot())
            }
            Tok::LParen => {
                self.bump();
                let f = self.imp()?;
                self.expect(Tok::RParen, ")")?;
                Ok(f)
            }
            Tok::Nabla => {
                self.bump();
                self.expect(Tok::LBrace, "{")?;
                let mut kids = Vec::new();
                if *self.peek() == Tok::RBrace {
                    self.bump();
                    return Ok(Formula::nabla(kids));
                }
                loop {
                    kids.push(self.imp()?);
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBrace => {
                            self.bump();
                            break;
                        }
                        _ => return self.fail(&[",", "}", "&", "|", "->"]),
                    }
                }
                Ok(Formula::nabla(kids))
            }
            _ => self.fail(OPERAND_START),
        }
    }
}

/// Parse a formula, interning every node.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.imp()?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["&", "|", "->", "end of input"]);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Node;

    #[test]
    fn examples_from_grammar() {
        let f = parse("<>p & [](p|q)").unwrap();
        let p = Formula::prop("p");
        let q = Formula::prop("q");
        assert_eq!(f, Formula::and(Formula::diamond(p), Formula::boxed(Formula::or(p, q))));
        assert_eq!(parse("~<>p").unwrap(), Formula::not(Formula::diamond(p)));
        assert_eq!(parse("p -> q").unwrap(), Formula::or(Formula::not(p), q));
    }

    #[test]
    fn precedence_and_associativity() {
        let (p, q, r) = (Formula::prop("p"), Formula::prop("q"), Formula::prop("r"));
        assert_eq!(parse("p | q & r").unwrap(), Formula::or(p, Formula::and(q, r)));
        assert_eq!(parse("p & q & r").unwrap(), Formula::and(Formula::and(p, q), r));
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(p, Formula::implies(q, r))
        );
        assert_eq!(parse("~p & q").unwrap(), Formula::and(Formula::not(p), q));
    }

    #[test]
    fn nabla_and_constants() {
        let f = parse("nabla{q, p, p}").unwrap();
        match f.node() {
            Node::Nabla(kids) => assert_eq!(kids.len(), 2),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse("nabla{}").unwrap(), Formula::nabla([]));
        assert_eq!(
            parse("true & false").unwrap(),
            Formula::and(Formula::top(), Formula::bot())
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse("◇p ∧ □(p ∨ q)").unwrap(), parse("<>p & [](p|q)").unwrap());
        assert_eq!(parse("¬p → ⊥").unwrap(), parse("~p -> false").unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        match parse("p & ").unwrap_err() {
            Error::Parse { offset, expected, .. } => {
                assert_eq!(offset, 4);
                assert!(expected.contains(&"letter".to_string()));
            }
            e => panic!("{e:?}"),
        }
        match parse("(p | q").unwrap_err() {
            Error::Parse { offset, expected, .. } => {
                assert_eq!(offset, 6);
                assert_eq!(expected, vec![")".to_string()]);
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(parse("P"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse("p q"), Err(Error::Parse { offset: 2, .. })));
    }
}
