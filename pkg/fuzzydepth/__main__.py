from fuzzydepth.cli import main

raise SystemExit(main())
