//! Expression trees for scalar fields of the state, time and input.

use std::fmt;

/// A variable reference inside an expression.
///
/// State and input indices are zero-based internally; `x1` in source text maps
/// to `Var::State(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    State(usize),
    Time,
    Input(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Unary functions understood by the evaluator.
///
/// `Sgn` and `SatPrime` are the right-continuous derivatives of `abs` and
/// `sat`; they are produced by differentiation and accepted by the parser so
/// derivative trees can be rendered and re-parsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
    Abs,
    Tanh,
    Sat,
    Sgn,
    SatPrime,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Tanh => "tanh",
            Func::Sat => "sat",
            Func::Sgn => "sgn",
            Func::SatPrime => "satp",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "tanh" => Func::Tanh,
            "sat" => Func::Sat,
            "sgn" => Func::Sgn,
            "satp" => Func::SatPrime,
            _ => return None,
        })
    }
}

/// Immutable expression tree. Evaluation is a deterministic walk, so the same
/// tree and environment always produce bit-identical results.
#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Const(f64),
    Var(Var),
    Neg(Box<Expression>),
    Bin(BinOp, Box<Expression>, Box<Expression>),
    /// Power with a non-negative integer literal exponent; keeps
    /// differentiation closed-form.
    Pow(Box<Expression>, u32),
    Func(Func, Box<Expression>),
}

impl Expression {
    pub fn constant(v: f64) -> Expression {
        Expression::Const(v)
    }

    pub fn state(i: usize) -> Expression {
        Expression::Var(Var::State(i))
    }

    pub fn time() -> Expression {
        Expression::Var(Var::Time)
    }

    pub fn input(i: usize) -> Expression {
        Expression::Var(Var::Input(i))
    }

    /// Largest 1-based state index referenced, 0 when none.
    pub fn max_state_index(&self) -> usize {
        self.fold_vars(0, &mut |acc, v| match v {
            Var::State(i) => acc.max(i + 1),
            _ => acc,
        })
    }

    /// Largest 1-based input index referenced, 0 when none.
    pub fn max_input_index(&self) -> usize {
        self.fold_vars(0, &mut |acc, v| match v {
            Var::Input(i) => acc.max(i + 1),
            _ => acc,
        })
    }

    pub fn references_time(&self) -> bool {
        self.fold_vars(false, &mut |acc, v| acc || v == Var::Time)
    }

    fn fold_vars<T: Copy>(&self, init: T, f: &mut impl FnMut(T, Var) -> T) -> T {
        match self {
            Expression::Const(_) => init,
            Expression::Var(v) => f(init, *v),
            Expression::Neg(a) | Expression::Func(_, a) | Expression::Pow(a, _) => {
                a.fold_vars(init, f)
            }
            Expression::Bin(_, a, b) => {
                let acc = a.fold_vars(init, f);
                b.fold_vars(acc, f)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expression::Bin(BinOp::Add | BinOp::Sub, _, _) => 1,
            Expression::Bin(BinOp::Mul | BinOp::Div, _, _) => 2,
            Expression::Neg(_) => 3,
            Expression::Pow(_, _) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            write!(f, "(")?;
        }
        match self {
            Expression::Const(v) => {
                if *v < 0.0 || v.is_sign_negative() {
                    // negative literals render through an explicit sign so the
                    // result re-parses as Neg(Const)
                    write!(f, "-{}", format_number(-v))?;
                } else {
                    write!(f, "{}", format_number(*v))?;
                }
            }
            Expression::Var(Var::State(i)) => write!(f, "x{}", i + 1)?,
            Expression::Var(Var::Time) => write!(f, "t")?,
            Expression::Var(Var::Input(i)) => write!(f, "u{}", i + 1)?,
            Expression::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Expression::Bin(op, a, b) => {
                let (sym, rhs_min) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 2),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 3),
                };
                a.fmt_prec(f, prec)?;
                write!(f, " {} ", sym)?;
                b.fmt_prec(f, rhs_min)?;
            }
            Expression::Pow(a, e) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{}", e)?;
            }
            Expression::Func(func, a) => {
                write!(f, "{}(", func.name())?;
                a.fmt_prec(f, 1)?;
                write!(f, ")")?;
            }
        }
        if prec < min_prec {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn format_number(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{:.0}", v)
    } else {
        // shortest round-trip representation
        format!("{}", v)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
