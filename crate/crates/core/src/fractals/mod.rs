//! The two fractal examples: the square snowflake `K` and the cube
//! polyhedron `D_s`, as exact shape lists with cell-exact rasters and the
//! closed-form width and count estimates derived for them.

mod boxdim;
pub mod cubes;
pub mod snowflake;

pub use boxdim::{box_dimension_estimate, BoxDimension};
pub use cubes::{
    build_cube_fractal, cube_fractal_count_bound, cube_fractal_epsilon_lower, cube_fractal_stats,
    cube_fractal_uniform_bound, CubeCountBound, CubeFractalSpec, CubeFractalStats,
};
pub use snowflake::{
    build_snowflake, snowflake_count_bound, snowflake_dimension, snowflake_epsilon_lower, snowflake_mu_upper,
    SnowflakeCountBound, SnowflakeSpec, SNOWFLAKE_MEASURE,
};
