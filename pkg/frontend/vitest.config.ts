import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // round-trip tests spawn solver runs
    testTimeout: 180_000,
    hookTimeout: 180_000,
  },
});
