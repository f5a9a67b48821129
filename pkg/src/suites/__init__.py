# Verification suites run by the engine