"""Core modules for penney_race: exact algebra, patterns, renewal PGFs, races, oracle."""
