pub mod chart;
pub mod corpus;
pub mod covering;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod pipeline;
pub mod quiver;
pub mod rep;
