use clap::{Args, Subcommand};
use clusterforge::nmatrix::{determinant_strategy, product, verify_quadric_relation, NMatrix, Word};
use serde_json::json;

use crate::error::CliError;
use crate::input;
use crate::output::Output;
use crate::CmdResult;

#[derive(Debug, Args)]
pub struct ProductArgs {
    /// `A3`, `D4`, ...
    #[arg(long = "type")]
    ty: String,
    /// Letters of the word, e.g. `1,2,4,3`.
    #[arg(long)]
    word: String,
    /// Parameter names, one per letter (default `t1, t2, ...`).
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    /// Evaluate at these parameter values instead of printing polynomials.
    #[arg(long)]
    point: Option<String>,
}

impl ProductArgs {
    fn build(&self) -> Result<NMatrix, CliError> {
        let letters = input::word(&self.word)?;
        let w = if self.params.is_empty() {
            Word::with_default_params(letters)
        } else {
            Word::new(letters, self.params.clone())?
        };
        Ok(product(input::ty(&self.ty)?, &w)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum NmatrixCmd {
    /// The product x_{i_1}(t_1) ... x_{i_k}(t_k).
    Product {
        #[command(flatten)]
        product: ProductArgs,
    },
    /// A minor of the product on 1-based rows and columns.
    Minor {
        #[command(flatten)]
        product: ProductArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        rows: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<usize>,
        /// `bareiss` or `cofactor`.
        #[arg(long, default_value = "bareiss")]
        strategy: String,
    },
    /// Check that the first row of a type D product is isotropic for the
    /// quadric form.
    QuadricCheck {
        #[arg(long = "type", default_value = "D4")]
        ty: String,
        /// Defaults to a bipartite reduced word for the longest element.
        #[arg(long)]
        word: Option<String>,
    },
}

impl NmatrixCmd {
    pub fn name(&self) -> &'static str {
        match self {
            NmatrixCmd::Product { .. } => "product",
            NmatrixCmd::Minor { .. } => "minor",
            NmatrixCmd::QuadricCheck { .. } => "quadric-check",
        }
    }
}

fn strings(x: &NMatrix) -> Vec<Vec<String>> {
    x.entries().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
}

pub fn run(cmd: &NmatrixCmd, out: &Output) -> CmdResult {
    match cmd {
        NmatrixCmd::Product { product } => {
            let x = product.build()?;
            let rows: Vec<Vec<String>> = match &product.point {
                Some(p) => {
                    let values = x.evaluate(&input::point(p)?)?;
                    values.iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect()
                }
                None => strings(&x),
            };
            out.emit(&json!({ "size": x.size(), "entries": rows }), || {
                for (i, r) in rows.iter().enumerate() {
                    for (j, e) in r.iter().enumerate() {
                        if e != "0" {
                            println!("n{}{} = {e}", i + 1, j + 1);
                        }
                    }
                }
            });
            Ok(true)
        }
        NmatrixCmd::Minor { product, rows, cols, strategy } => {
            let x = product.build()?;
            let m = x.minor_with(rows, cols, determinant_strategy(strategy)?.as_ref())?;
            let value = match &product.point {
                Some(p) => m.evaluate_slice(&input::point(p)?)?.to_string(),
                None => m.to_string(),
            };
            out.emit(&json!({ "rows": rows, "cols": cols, "strategy": strategy, "value": value }), || {
                println!("minor rows {rows:?} cols {cols:?} = {value}");
            });
            Ok(true)
        }
        NmatrixCmd::QuadricCheck { ty, word } => {
            let letters = word.as_deref().map(input::word).transpose()?;
            let check = verify_quadric_relation(input::ty(ty)?, letters.as_deref())?;
            let form = if check.holds {
                "0".to_string()
            } else {
                format!("nonzero (term {})", check.witness.clone().unwrap_or_default())
            };
            out.emit(&check, || println!("quadric form on the first row: {form}"));
            Ok(check.holds)
        }
    }
}
