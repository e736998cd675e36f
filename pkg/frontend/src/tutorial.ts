/**
 * Three-page onboarding flow shown before the first video: what the
 * player does, a live try-it demo, and the task instructions.  The demo
 * page locks the next button until the participant has actually moved
 * the cursor over the demo clip.
 */

export const TUTORIAL_PAGES = ["concept", "demo", "instructions"] as const;
export type TutorialPage = (typeof TUTORIAL_PAGES)[number];

export class TutorialFlow {
  #page = 0;
  #demoInteractions = 0;
  #acknowledged = false;

  get page(): TutorialPage {
    return TUTORIAL_PAGES[this.#page];
  }

  get pageIndex(): number {
    return this.#page;
  }

  get done(): boolean {
    return this.#acknowledged;
  }

  /** Called by the demo render loop whenever the participant moves the cursor. */
  recordDemoInteraction(): void {
    if (this.page === "demo") this.#demoInteractions++;
  }

  get demoInteractions(): number {
    return this.#demoInteractions;
  }

  canAdvance(): boolean {
    if (this.#acknowledged) return false;
    if (this.page === "demo") return this.#demoInteractions > 0;
    return true;
  }

  /** Move to the next page; finishing the last page acknowledges the tutorial. */
  advance(): TutorialPage | "done" {
    if (!this.canAdvance()) {
      throw new Error(`cannot leave the ${this.page} page yet`);
    }
    if (this.#page === TUTORIAL_PAGES.length - 1) {
      this.#acknowledged = true;
      return "done";
    }
    this.#page++;
    return this.page;
  }
}
