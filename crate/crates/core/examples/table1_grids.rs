//! Prints the intermediate cost grids of the dynamic program for the Benford
//! example, one table per level, and the state the optimal tree ends from.

use rlpc::cli::{render_level, table1_grid};
use rlpc::reserved_dp::partial_lengths;

fn main() -> rlpc::Result<()> {
    let grid = table1_grid();
    for m in 1..grid.levels() {
        println!("{}", render_level(&grid, m, 4));
    }

    let best = grid.best().expect("the Benford instance is feasible");
    let prefix = partial_lengths(&grid, best.level - 1, best.pred_upsilon, best.pred_eta)?;
    println!(
        "finished at lambda = {} with cost {:.4}; lengths fixed before the last level: {prefix:?}",
        grid.lambdas()[best.level - 1],
        best.cost
    );
    Ok(())
}
