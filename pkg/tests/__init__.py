# BSD 3-Clause License; see LICENSE
