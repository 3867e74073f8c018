pub mod coalg;
pub mod frontend;
pub mod gauge;
pub mod ncalg;
pub mod poisson;
pub mod report;
pub mod series;
pub mod uhsl2;
