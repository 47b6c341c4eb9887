# penney_race source package
