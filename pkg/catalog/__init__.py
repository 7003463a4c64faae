"""Named structures and complex-frame conversion."""
