"""Document codec, analysis reports and the acceptance ledger."""
