//! Postfix programs for user-supplied radial maps.
//!
//! A program is a whitespace separated token sequence over one variable `r`:
//!
//! ```text
//! r r * 4 r r * + / sqrt        # (r^2 / (4 + r^2))^(1/2)
//! ```
//!
//! Stack balance is checked once at parse time, so evaluation can only fail
//! on a numeric domain violation.

use std::fmt;

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadialMapError {
    #[error("unknown token `{token}` at position {index}")]
    UnknownToken { index: usize, token: String },
    #[error("`{token}` at position {index} needs more operands than the stack holds")]
    StackUnderflow { index: usize, token: String },
    #[error("program leaves {depth} values on the stack; expected exactly one")]
    LeftoverOperands { depth: usize },
    #[error("radial map evaluated at negative radius {0}")]
    NegativeArgument(f64),
    #[error("domain error in `{token}` at position {index}: {detail}")]
    DomainError {
        index: usize,
        token: String,
        detail: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryFn {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Ln,
    Sqrt,
    Acosh,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Token<F> {
    Literal(F),
    Var,
    Binary(BinaryOp),
    Unary(UnaryFn),
}

impl BinaryOp {
    fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }
}

impl UnaryFn {
    const ALL: [UnaryFn; 8] = [
        UnaryFn::Sin,
        UnaryFn::Cos,
        UnaryFn::Sinh,
        UnaryFn::Cosh,
        UnaryFn::Exp,
        UnaryFn::Ln,
        UnaryFn::Sqrt,
        UnaryFn::Acosh,
    ];

    fn name(self) -> &'static str {
        match self {
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Sinh => "sinh",
            UnaryFn::Cosh => "cosh",
            UnaryFn::Exp => "exp",
            UnaryFn::Ln => "ln",
            UnaryFn::Sqrt => "sqrt",
            UnaryFn::Acosh => "acosh",
        }
    }
}

impl<F: Real> Token<F> {
    fn parse(text: &str) -> Option<Self> {
        let op = match text {
            "r" => return Some(Token::Var),
            "+" => Some(BinaryOp::Add),
            "-" => Some(BinaryOp::Sub),
            "*" => Some(BinaryOp::Mul),
            "/" => Some(BinaryOp::Div),
            "^" => Some(BinaryOp::Pow),
            _ => None,
        };
        if let Some(op) = op {
            return Some(Token::Binary(op));
        }
        if let Some(f) = UnaryFn::ALL.into_iter().find(|f| f.name() == text) {
            return Some(Token::Unary(f));
        }
        // Only plain decimal literals; "inf", "nan" and friends are rejected.
        if !text.bytes().any(|b| b.is_ascii_digit())
            || !text.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b))
        {
            return None;
        }
        let value: f64 = text.parse().ok()?;
        value.is_finite().then(|| Token::Literal(F::lit(value)))
    }

    /// Net stack effect and number of operands required.
    fn arity(&self) -> (isize, usize) {
        match self {
            Token::Literal(_) | Token::Var => (1, 0),
            Token::Unary(_) => (0, 1),
            Token::Binary(_) => (-1, 2),
        }
    }
}

impl<F: fmt::Display> fmt::Display for Token<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Literal(v) => write!(f, "{v}"),
            Token::Var => f.write_str("r"),
            Token::Binary(op) => f.write_str(op.symbol()),
            Token::Unary(func) => f.write_str(func.name()),
        }
    }
}

/// A validated postfix program computing a radial map `r -> alpha(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMap<F> {
    tokens: Vec<Token<F>>,
}

impl<F: Real> RadialMap<F> {
    /// Parses and validates a postfix program.
    pub fn parse(expr: &str) -> Result<Self, RadialMapError> {
        let mut tokens = Vec::new();
        let mut depth = 0usize;
        for (index, text) in expr.split_whitespace().enumerate() {
            let token = Token::parse(text).ok_or_else(|| RadialMapError::UnknownToken {
                index,
                token: text.to_owned(),
            })?;
            let (delta, needs) = token.arity();
            if depth < needs {
                return Err(RadialMapError::StackUnderflow {
                    index,
                    token: text.to_owned(),
                });
            }
            depth = (depth as isize + delta) as usize;
            tokens.push(token);
        }
        if depth != 1 {
            return Err(RadialMapError::LeftoverOperands { depth });
        }
        Ok(RadialMap { tokens })
    }

    /// The identity map `r`.
    pub fn identity() -> Self {
        RadialMap {
            tokens: vec![Token::Var],
        }
    }

    pub fn tokens(&self) -> &[Token<F>] {
        &self.tokens
    }

    /// Evaluates the program at `x >= 0`.
    pub fn eval(&self, x: F) -> Result<F, RadialMapError> {
        let mut stack = Vec::with_capacity(self.tokens.len());
        self.eval_with_stack(x, &mut stack)
    }

    /// Evaluates reusing a caller-provided stack buffer.
    pub fn eval_with_stack(&self, x: F, stack: &mut Vec<F>) -> Result<F, RadialMapError> {
        if x.is_nan() || x < F::zero() {
            return Err(RadialMapError::NegativeArgument(x.to_f64().unwrap_or(f64::NAN)));
        }
        stack.clear();
        for (index, token) in self.tokens.iter().enumerate() {
            let value = match *token {
                Token::Literal(v) => v,
                Token::Var => x,
                Token::Unary(func) => {
                    let a = stack.pop().expect("validated at parse time");
                    apply_unary(func, a).map_err(|detail| domain(index, token, detail))?
                }
                Token::Binary(op) => {
                    let b = stack.pop().expect("validated at parse time");
                    let a = stack.pop().expect("validated at parse time");
                    apply_binary(op, a, b).map_err(|detail| domain(index, token, detail))?
                }
            };
            if !value.is_finite() {
                return Err(domain(index, token, "result is not finite".to_owned()));
            }
            stack.push(value);
        }
        Ok(stack.pop().expect("validated at parse time"))
    }
}

fn domain<F: Real>(index: usize, token: &Token<F>, detail: String) -> RadialMapError {
    RadialMapError::DomainError {
        index,
        token: token.to_string(),
        detail,
    }
}

fn apply_unary<F: Real>(func: UnaryFn, a: F) -> Result<F, String> {
    Ok(match func {
        UnaryFn::Sin => a.sin(),
        UnaryFn::Cos => a.cos(),
        UnaryFn::Sinh => a.sinh(),
        UnaryFn::Cosh => a.cosh(),
        UnaryFn::Exp => a.exp(),
        UnaryFn::Ln if a <= F::zero() => return Err(format!("ln of nonpositive value {a}")),
        UnaryFn::Ln => a.ln(),
        UnaryFn::Sqrt if a < F::zero() => return Err(format!("sqrt of negative value {a}")),
        UnaryFn::Sqrt => a.sqrt(),
        UnaryFn::Acosh if a < F::one() => return Err(format!("acosh of value {a} below 1")),
        UnaryFn::Acosh => a.acosh(),
    })
}

fn apply_binary<F: Real>(op: BinaryOp, a: F, b: F) -> Result<F, String> {
    Ok(match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div if b == F::zero() => return Err(format!("division of {a} by zero")),
        BinaryOp::Div => a / b,
        // powf already yields 0^0 = 1.
        BinaryOp::Pow => {
            let v = a.powf(b);
            if v.is_nan() {
                return Err(format!("{a} ^ {b} is undefined"));
            }
            v
        }
    })
}

impl<F: Real> std::str::FromStr for RadialMap<F> {
    type Err = RadialMapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl<F: fmt::Display> fmt::Display for RadialMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, token) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{token}")?;
        }
        Ok(())
    }
}
