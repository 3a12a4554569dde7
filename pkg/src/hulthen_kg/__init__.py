"""Klein-Gordon bound states for scalar and vector Hulthen potentials."""
