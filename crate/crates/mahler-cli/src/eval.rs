//! Exact evaluation of parsed expressions into rational functions or
//! matrices of rational functions.

use std::fmt;

use mahler::error::MahlerError;
use mahler::{Mat, RatFun};
use num_bigint::BigInt;

use crate::parser::ExprAst;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Scalar(RatFun),
    Matrix(Mat),
}

impl Value {
    pub fn into_scalar(self) -> Result<RatFun, EvalError> {
        match self {
            Value::Scalar(f) => Ok(f),
            Value::Matrix(_) => Err(EvalError::TypeMismatch(
                "expected a scalar expression, found a matrix".into(),
            )),
        }
    }

    pub fn into_matrix(self) -> Result<Mat, EvalError> {
        match self {
            Value::Matrix(m) => Ok(m),
            Value::Scalar(_) => Err(EvalError::TypeMismatch(
                "expected a matrix expression, found a scalar".into(),
            )),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Matrix(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EvalError {
    Math(MahlerError),
    TypeMismatch(String),
}

impl EvalError {
    pub fn code(&self) -> &'static str {
        match self {
            EvalError::Math(e) => e.code(),
            EvalError::TypeMismatch(_) => "E_TYPE",
        }
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Math(e) => write!(f, "{e}"),
            EvalError::TypeMismatch(m) => write!(f, "type mismatch: {m}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<MahlerError> for EvalError {
    fn from(e: MahlerError) -> Self {
        EvalError::Math(e)
    }
}

pub fn eval_expr(ast: &ExprAst) -> Result<Value, EvalError> {
    match ast {
        ExprAst::Int(digits) => {
            let n: BigInt = digits.parse().expect("lexer only emits decimal digits");
            Ok(Value::Scalar(RatFun::constant(mahler::Rat::from_integer(n))))
        }
        ExprAst::Var => Ok(Value::Scalar(RatFun::var())),
        ExprAst::Paren(inner) => eval_expr(inner),
        ExprAst::Neg(inner) => match eval_expr(inner)? {
            Value::Scalar(f) => Ok(Value::Scalar(-&f)),
            Value::Matrix(m) => Ok(Value::Matrix(m.neg())),
        },
        ExprAst::Add(a, b) => match (eval_expr(a)?, eval_expr(b)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
            (Value::Matrix(x), Value::Matrix(y)) => Ok(Value::Matrix(x.add(&y)?)),
            _ => Err(EvalError::TypeMismatch(
                "cannot add a scalar and a matrix".into(),
            )),
        },
        ExprAst::Sub(a, b) => match (eval_expr(a)?, eval_expr(b)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x - &y)),
            (Value::Matrix(x), Value::Matrix(y)) => Ok(Value::Matrix(x.sub(&y)?)),
            _ => Err(EvalError::TypeMismatch(
                "cannot subtract a scalar and a matrix".into(),
            )),
        },
        ExprAst::Mul(a, b) => match (eval_expr(a)?, eval_expr(b)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x * &y)),
            (Value::Scalar(x), Value::Matrix(m)) | (Value::Matrix(m), Value::Scalar(x)) => {
                Ok(Value::Matrix(m.scale(&x)))
            }
            (Value::Matrix(x), Value::Matrix(y)) => Ok(Value::Matrix(x.mul(&y)?)),
        },
        ExprAst::Div(a, b) => match (eval_expr(a)?, eval_expr(b)?) {
            (Value::Scalar(x), Value::Scalar(y)) => {
                if y.is_zero() {
                    return Err(MahlerError::DivisionByZero.into());
                }
                Ok(Value::Scalar(&x / &y))
            }
            (Value::Matrix(m), Value::Scalar(y)) => {
                if y.is_zero() {
                    return Err(MahlerError::DivisionByZero.into());
                }
                Ok(Value::Matrix(m.scale(&y.inv()?)))
            }
            _ => Err(EvalError::TypeMismatch(
                "division is scalar/scalar or matrix/scalar".into(),
            )),
        },
        ExprAst::Pow(base, exp) => match eval_expr(base)? {
            Value::Scalar(f) => {
                if f.is_zero() && *exp < 0 {
                    return Err(MahlerError::DivisionByZero.into());
                }
                Ok(Value::Scalar(f.pow(*exp)?))
            }
            Value::Matrix(m) => {
                if !m.is_square() {
                    return Err(EvalError::Math(MahlerError::ShapeMismatch(
                        "matrix powers need a square matrix".into(),
                    )));
                }
                let (base, mut e) = if *exp < 0 {
                    (m.inverse()?, (-*exp) as u64)
                } else {
                    (m, *exp as u64)
                };
                let mut acc = Mat::identity(base.rows());
                let mut pw = base;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc.mul(&pw)?;
                    }
                    e >>= 1;
                    if e > 0 {
                        pw = pw.mul(&pw)?;
                    }
                }
                Ok(Value::Matrix(acc))
            }
        },
        ExprAst::Matrix(rows) => {
            let mut out_rows = Vec::with_capacity(rows.len());
            let width = rows.first().map_or(0, |r| r.len());
            for row in rows {
                if row.len() != width {
                    return Err(MahlerError::NonRectangularMatrix.into());
                }
                let mut out_row = Vec::with_capacity(row.len());
                for entry in row {
                    match eval_expr(entry)? {
                        Value::Scalar(f) => out_row.push(f),
                        Value::Matrix(_) => {
                            return Err(EvalError::TypeMismatch(
                                "matrix entries must be scalar expressions".into(),
                            ))
                        }
                    }
                }
                out_rows.push(out_row);
            }
            Ok(Value::Matrix(Mat::from_rows(out_rows)?))
        }
    }
}

/// Parse and evaluate in one step.
pub fn eval_text(text: &str) -> Result<Value, crate::CliError> {
    let ast = crate::parser::parse_expr(text).map_err(crate::CliError::Syntax)?;
    eval_expr(&ast).map_err(crate::CliError::Eval)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use mahler::{rat, rat_int, rudin_shapiro_system, Poly};

    fn eval(text: &str) -> Result<Value, EvalError> {
        eval_expr(&parse_expr(text).unwrap())
    }

    #[test]
    fn difference_of_squares() {
        let v = eval("(1-z)*(1+z)").unwrap().into_scalar().unwrap();
        let expected = RatFun::from_poly(Poly::from_coeffs(vec![
            rat_int(1),
            rat_int(0),
            rat_int(-1),
        ]));
        assert_eq!(v, expected);
    }

    #[test]
    fn division_by_vanishing_polynomial() {
        assert_eq!(
            eval("1/(z-z)").unwrap_err(),
            EvalError::Math(MahlerError::DivisionByZero)
        );
    }

    #[test]
    fn rudin_shapiro_matrix_from_text() {
        let v = eval("(1/2)*[[1,1],[1/z,-1/z]]").unwrap().into_matrix().unwrap();
        assert_eq!(&v, rudin_shapiro_system().matrix());
    }

    #[test]
    fn ragged_matrix_rejected_at_eval() {
        assert_eq!(
            eval("[[1,2],[3]]").unwrap_err(),
            EvalError::Math(MahlerError::NonRectangularMatrix)
        );
    }

    #[test]
    fn scalar_matrix_mixing_rejected() {
        assert!(matches!(
            eval("1 + [[1,0],[0,1]]").unwrap_err(),
            EvalError::TypeMismatch(_)
        ));
    }

    #[test]
    fn negative_powers() {
        let v = eval("z^-2").unwrap().into_scalar().unwrap();
        assert_eq!(v, RatFun::monomial_zm(-2));
        let v = eval("(1/2)^-1").unwrap().into_scalar().unwrap();
        assert_eq!(v, RatFun::constant(rat(2, 1)));
    }
}
