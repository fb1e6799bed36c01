//! Tokenizer and recursive-descent parser for surface component expressions.
//!
//! Precedence, loosest first: `+ -`, `* /`, unary `-`, `^` (right
//! associative). Implicit multiplication is not accepted. Positions in
//! errors are 1-based character columns; end of input is `len + 1`.

use super::{BinOp, Expr, ExprError, Func, NamedConst, Variable};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // Exponent only when followed by digits, so `2e` stays `2` then `e`.
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let value = s.parse::<f64>().map_err(|_| ExprError::Syntax {
                pos,
                message: format!("malformed number '{s}'"),
            })?;
            out.push(Token {
                tok: Tok::Num(value),
                pos,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                pos,
            });
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '−' => Tok::Op('-'),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            _ => {
                return Err(ExprError::Syntax {
                    pos,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push(Token { tok, pos });
        i += 1;
    }
    out.push(Token {
        tok: Tok::End,
        pos: chars.len() + 1,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ExprError {
        let t = self.peek();
        let found = match &t.tok {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Op(c) => format!("'{c}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        };
        ExprError::Syntax {
            pos: t.pos,
            message: format!("expected {wanted}, found {found}"),
        }
    }

    fn list(&mut self) -> Result<Vec<Expr>, ExprError> {
        let mut items = vec![self.expr()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            items.push(self.expr()?);
        }
        Ok(items)
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek().tok == Tok::Op('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.peek().pos;
        let exponent = self.unary()?;
        if exponent.const_value().is_none() {
            return Err(ExprError::Syntax {
                pos,
                message: "exponent must be a constant".into(),
            });
        }
        Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(x) => {
                self.bump();
                Ok(Expr::Num(x))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(f) = Func::from_name(&name) {
                    if self.peek().tok != Tok::LParen {
                        return Err(self.unexpected(&format!("'(' after function '{name}'")));
                    }
                    self.bump();
                    let args = self.list()?;
                    self.expect_rparen()?;
                    if args.len() != 1 {
                        return Err(ExprError::Arity {
                            context: format!("function '{name}'"),
                            expected: 1,
                            found: args.len(),
                        });
                    }
                    let arg = args.into_iter().next().expect("one argument");
                    return Ok(Expr::Call(f, Box::new(arg)));
                }
                match name.as_str() {
                    "u" => Ok(Expr::Var(Variable::U)),
                    "v" => Ok(Expr::Var(Variable::V)),
                    "pi" => Ok(Expr::Const(NamedConst::Pi)),
                    "e" => Ok(Expr::Const(NamedConst::E)),
                    _ => Err(ExprError::UnknownIdentifier { name, pos: t.pos }),
                }
            }
            _ => Err(self.unexpected("a number, variable, function or '('")),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ExprError> {
        if self.peek().tok == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected("')'"))
        }
    }

    fn finish(&self) -> Result<(), ExprError> {
        if self.peek().tok == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("',' or end of input"))
        }
    }
}

/// Parses a comma-separated list of expressions.
pub fn parse_list(text: &str) -> Result<Vec<Expr>, ExprError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let items = p.list()?;
    p.finish()?;
    Ok(items)
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
    };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}
