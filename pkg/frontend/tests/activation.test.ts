import assert from "node:assert/strict";
import { test } from "node:test";

import { RayActivation } from "../src/activation.js";

test("auto mode hides rays after 50 ms of stillness (mocked clock)", () => {
  const activation = new RayActivation("auto", { vanishAfterStaticMs: 50 });
  assert.equal(activation.visible(0), false); // no motion yet
  activation.onPointerMove(1000);
  assert.equal(activation.visible(1000), true);
  assert.equal(activation.visible(1049), true);
  assert.equal(activation.visible(1050), false); // static for the full window
  assert.equal(activation.visible(1060), false);
  activation.onPointerMove(1061);
  assert.equal(activation.visible(1062), true); // motion re-arms the rays
});

test("always_on mode ignores the clock", () => {
  const activation = new RayActivation("always_on");
  assert.equal(activation.visible(0), true);
  assert.equal(activation.visible(1e9), true);
});

test("manual mode follows the key chord", () => {
  const activation = new RayActivation("manual");
  assert.equal(activation.visible(0), false);
  activation.onChordChange(true);
  assert.equal(activation.visible(0), true);
  activation.onChordChange(false);
  assert.equal(activation.visible(0), false);
});

test("vanish window must be positive", () => {
  assert.throws(() => new RayActivation("auto", { vanishAfterStaticMs: 0 }));
});
