package org.eclipse.jdt.internal.debug.eval.ast.engine;

import org.eclipse.jdt.internal.debug.core.model.JDIThread;
import org.eclipse.jdt.internal.debug.eval.ast.instructions.Instruction;
import org.eclipse.debug.core.DebugException;

/**
 * Background thread performing one evaluation. The evaluation runs the
 * interpreter on the suspended target thread and posts the result back to
 * the engine when the run loop finishes.
 */
public class EvaluationThread extends Thread {

    private Interpreter fInterpreter;
    private JDIThread fThread;
    private boolean fEvaluating;

    public void run() {
        while (fEvaluating) {
            doEvaluation();
        }
    }

    public void doEvaluation() {
        fThread.runEvaluation(new Runnable() {
            public void run() {
                fInterpreter.execute();
            }
        });
        fEvaluating = false;
    }

    public boolean access() {
        return fEvaluating;
    }

    public void evaluationComplete() {
        fEvaluating = false;
    }
}
