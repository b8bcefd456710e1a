"""beattylab: least primes in Beatty sequences and the explicit inequalities
behind the bound, as an exactly-computing laboratory."""

__version__ = "0.1.0"
