/** Serializes async jobs: one runs at a time, later ones wait their turn.
 * A job that rejects does not stall the queue. */
export class SendQueue {
  private chain: Promise<void> = Promise.resolve();
  private depth = 0;

  get pending(): number {
    return this.depth;
  }

  enqueue(job: () => Promise<void>): Promise<void> {
    this.depth += 1;
    const run = this.chain.then(job).catch(() => undefined);
    this.chain = run.then(() => {
      this.depth -= 1;
    });
    return this.chain;
  }
}
