"""Second-order geometry of corank-1 singular manifolds."""
